#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "apfstat/error.hpp"
#include "apfstat/geometry.hpp"
#include "gtest/gtest.h"

using apfstat::Error;
using apfstat::ErrorKind;
using namespace apfstat::geometry;

namespace {

std::vector<Point2> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

// Andrew's monotone chain; returns the number of strict hull vertices.
std::size_t hull_size(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](auto a, auto b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  auto cross = [](Point2 o, Point2 a, Point2 b) {
    return (long double)(a.x - o.x) * (b.y - o.y) -
           (long double)(a.y - o.y) * (b.x - o.x);
  };
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  return k - 1;
}

// Strictly inside the circumcircle, in long double with a relative margin so
// that only clear violations count.
bool clearly_inside(Point2 a, Point2 b, Point2 c, Point2 d) {
  using L = long double;
  L ax = a.x - d.x, ay = a.y - d.y, bx = b.x - d.x, by = b.y - d.y,
    cx = c.x - d.x, cy = c.y - d.y;
  L det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
          (bx * bx + by * by) * (ax * cy - cx * ay) +
          (cx * cx + cy * cy) * (ax * by - bx * ay);
  return det > 1e-12L;
}

double signed_area(Point2 a, Point2 b, Point2 c) {
  return ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)) / 2.0;
}

}  // namespace

TEST(predicates, orient_signs) {
  EXPECT_GT(orient2d({0, 0}, {1, 0}, {0, 1}), 0.0);
  EXPECT_LT(orient2d({0, 0}, {0, 1}, {1, 0}), 0.0);
  EXPECT_EQ(orient2d({0, 0}, {1, 1}, {2, 2}), 0.0);
}

TEST(predicates, orient_exact_near_degenerate) {
  // Points on the line y = x nudged by one ulp: naive evaluation in double
  // gets these wrong for a good fraction of offsets.
  const Point2 a{12.0, 12.0};
  const Point2 b{24.0, 24.0};
  for (int i = 0; i < 64; ++i) {
    const double x = 0.5 + i * std::ldexp(1.0, -53);
    const Point2 on{x, x};
    EXPECT_EQ(orient2d(on, a, b), 0.0) << i;
    const Point2 above{x, std::nextafter(x, 1.0)};
    EXPECT_GT(orient2d(a, b, above), 0.0) << i;
  }
}

TEST(predicates, incircle_signs) {
  const Point2 a{0, 0}, b{1, 0}, c{0, 1};
  EXPECT_GT(incircle(a, b, c, {0.5, 0.5}), 0.0);
  EXPECT_LT(incircle(a, b, c, {2, 2}), 0.0);
  EXPECT_EQ(incircle(a, b, c, {1, 1}), 0.0);
}

TEST(delaunay, three_points) {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 1}};
  const auto tri = delaunay(pts);
  ASSERT_EQ(tri.triangles.size(), 1U);
  auto t = tri.triangles[0];
  std::sort(t.begin(), t.end());
  EXPECT_EQ(t, (std::array<std::uint32_t, 3>{0, 1, 2}));
  EXPECT_EQ(tri.edges.size(), 3U);
}

TEST(delaunay, four_points_share_long_edge) {
  const std::vector<Point2> pts{{0, 0}, {2, 0}, {1, 1}, {1, -1}};
  const auto tri = delaunay(pts);
  ASSERT_EQ(tri.triangles.size(), 2U);
  EXPECT_TRUE(std::binary_search(tri.edges.begin(), tri.edges.end(),
                                 std::array<std::uint32_t, 2>{0, 1}));
  EXPECT_FALSE(std::binary_search(tri.edges.begin(), tri.edges.end(),
                                  std::array<std::uint32_t, 2>{2, 3}));
}

TEST(delaunay, errors) {
  const std::vector<Point2> collinear{{0, 0}, {1, 1}, {2, 2}};
  try {
    delaunay(collinear);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAllCollinear);
  }
  const std::vector<Point2> dup{{0, 0}, {1, 0}, {0, 1}, {1, 0}};
  try {
    delaunay(dup);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDuplicatePoints);
  }
  const std::vector<Point2> two{{0, 0}, {1, 0}};
  EXPECT_THROW(delaunay(two), Error);
  const std::vector<Point2> nan{{0, 0}, {1, 0}, {0, std::nan("")}};
  EXPECT_THROW(delaunay(nan), Error);
}

TEST(delaunay, random_sets_are_delaunay) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 3 + seed * 6;
    const auto pts = random_points(n, seed);
    const auto tri = delaunay(pts);
    // Euler: a triangulation of n points with h hull vertices has 2n - 2 - h
    // triangles and 3n - 3 - h edges.
    const std::size_t h = hull_size(pts);
    ASSERT_EQ(tri.triangles.size(), 2 * n - 2 - h) << seed;
    ASSERT_EQ(tri.edges.size(), 3 * n - 3 - h) << seed;
    for (const auto& t : tri.triangles) {
      const Point2 a = pts[t[0]], b = pts[t[1]], c = pts[t[2]];
      ASSERT_GT(signed_area(a, b, c), 0.0);
      for (const auto& d : pts) {
        ASSERT_FALSE(clearly_inside(a, b, c, d)) << seed;
      }
    }
  }
}

TEST(delaunay, cocircular_grid) {
  // Every unit square of a lattice is co-circular; the result must still be
  // a valid triangulation covering the hull exactly once.
  std::vector<Point2> pts;
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 6; ++j) pts.push_back({double(i), double(j)});
  }
  std::shuffle(pts.begin(), pts.end(), std::mt19937_64(5));
  const auto tri = delaunay(pts);
  EXPECT_EQ(tri.triangles.size(), 2U * 6 * 5);
  double area = 0.0;
  for (const auto& t : tri.triangles) {
    const double s = signed_area(pts[t[0]], pts[t[1]], pts[t[2]]);
    EXPECT_GT(s, 0.0);
    area += s;
  }
  EXPECT_DOUBLE_EQ(area, 30.0);
  // Same input, same output.
  const auto again = delaunay(pts);
  EXPECT_EQ(again.triangles, tri.triangles);
}

TEST(delaunay, points_on_one_circle) {
  std::vector<Point2> pts;
  for (int i = 0; i < 24; ++i) {
    const double t = 2.0 * M_PI * i / 24.0;
    pts.push_back({std::cos(t), std::sin(t)});
  }
  const auto tri = delaunay(pts);
  EXPECT_EQ(tri.triangles.size(), 22U);
}

TEST(delaunay, collinear_prefix) {
  // Many collinear points before the first one off the line.
  std::vector<Point2> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({double(i), 0.0});
  pts.push_back({4.5, 3.0});
  pts.push_back({4.5, -2.0});
  const auto tri = delaunay(pts);
  EXPECT_EQ(tri.triangles.size(), 18U);
}

TEST(alpha, equilateral_values) {
  for (double s : {0.5, 1.0, 2.0}) {
    const std::vector<Point2> pts{{0, 0}, {s, 0}, {s / 2, s * std::sqrt(3.0) / 2}};
    const auto f = alpha_filtration(pts);
    ASSERT_EQ(f.simplices.size(), 7U);
    for (const auto& sx : f.simplices) {
      if (sx.dim == 0) EXPECT_EQ(sx.value, 0.0);
      if (sx.dim == 1) EXPECT_NEAR(sx.value, s / 2, 1e-15);
      if (sx.dim == 2) EXPECT_NEAR(sx.value, s / std::sqrt(3.0), 1e-15);
    }
  }
}

TEST(alpha, two_points) {
  const std::vector<Point2> pts{{0, 0}, {2, 0}};
  const auto f = alpha_filtration(pts);
  ASSERT_EQ(f.simplices.size(), 3U);
  EXPECT_EQ(f.simplices[2].dim, 1);
  EXPECT_EQ(f.simplices[2].value, 1.0);
}

TEST(alpha, obtuse_edge_not_gabriel) {
  const std::vector<Point2> pts{{0, 0}, {4, 0}, {2, 0.5}};
  const auto f = alpha_filtration(pts);
  const double r = circumradius(pts[0], pts[1], pts[2]);
  // R = abc / (4 area) with area 1 and a = 4, b = c = sqrt(4.25).
  EXPECT_NEAR(r, 4.0 * 4.25 / 4.0, 1e-12);
  for (const auto& sx : f.simplices) {
    if (sx.dim == 1 && sx.vertices[0] == 0 && sx.vertices[1] == 1) {
      EXPECT_EQ(sx.value, r);
      EXPECT_NE(sx.value, 2.0);
    }
  }
}

TEST(alpha, monotone_and_gabriel_exact) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto pts = random_points(10 * seed, seed + 100);
    const auto f = alpha_filtration(pts);
    for (const auto& sx : f.simplices) {
      if (sx.dim == 0) {
        EXPECT_EQ(sx.value, 0.0);
        continue;
      }
      for (int i = 0; i <= sx.dim; ++i) {
        ASSERT_LE(f.simplices[sx.facets[i]].value, sx.value);
      }
      if (sx.dim == 1) {
        const Point2 a = pts[sx.vertices[0]], b = pts[sx.vertices[1]];
        const Point2 mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
        const double half = std::hypot(a.x - b.x, a.y - b.y) / 2;
        bool empty = true;
        for (std::size_t k = 0; k < pts.size(); ++k) {
          if (k == sx.vertices[0] || k == sx.vertices[1]) continue;
          if (std::hypot(pts[k].x - mid.x, pts[k].y - mid.y) < half * (1 - 1e-12)) {
            empty = false;
          }
        }
        if (empty) EXPECT_EQ(sx.value, half);
        else EXPECT_GT(sx.value, half);
      }
    }
    // `order` lists faces before cofaces and is sorted by value.
    std::vector<std::size_t> position(f.simplices.size());
    for (std::size_t i = 0; i < f.order.size(); ++i) position[f.order[i]] = i;
    for (std::size_t i = 0; i + 1 < f.order.size(); ++i) {
      ASSERT_LE(f.simplices[f.order[i]].value, f.simplices[f.order[i + 1]].value);
    }
    for (std::size_t s = 0; s < f.simplices.size(); ++s) {
      for (int i = 0; f.simplices[s].dim > 0 && i <= f.simplices[s].dim; ++i) {
        ASSERT_LT(position[f.simplices[s].facets[i]], position[s]);
      }
    }
  }
}

TEST(alpha, collinear_cloud_is_a_path) {
  const std::vector<Point2> pts{{3, 3}, {0, 0}, {1, 1}, {2, 2}};
  const auto f = alpha_filtration(pts);
  std::size_t edges = 0;
  for (const auto& sx : f.simplices) {
    if (sx.dim == 1) {
      ++edges;
      EXPECT_NEAR(sx.value, std::sqrt(2.0) / 2, 1e-15);
    }
    EXPECT_LT(sx.dim, 2);
  }
  EXPECT_EQ(edges, 3U);
}

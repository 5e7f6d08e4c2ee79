#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "apfstat/error.hpp"
#include "apfstat/geometry.hpp"

namespace apfstat::geometry {
namespace {

double half_length(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::hypot(dx, dy) / 2.0;
}

// Strictly inside the disc with diameter ab.
bool in_diametral_disc(const Point2& a, const Point2& b, const Point2& o) {
  return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y) < 0.0;
}

Filtration path_filtration(std::span<const Point2> points) {
  const auto n = static_cast<std::uint32_t>(points.size());
  std::vector<std::uint32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0U);
  std::sort(ids.begin(), ids.end(), [&](std::uint32_t i, std::uint32_t j) {
    return points[i].x < points[j].x ||
           (points[i].x == points[j].x && points[i].y < points[j].y);
  });
  Filtration f;
  f.num_vertices = n;
  for (std::uint32_t v = 0; v < n; ++v) {
    Simplex s;
    s.dim = 0;
    s.vertices = {v, 0, 0};
    f.simplices.push_back(s);
  }
  for (std::uint32_t i = 1; i < n; ++i) {
    const std::uint32_t a = ids[i - 1];
    const std::uint32_t b = ids[i];
    if (points[a] == points[b]) {
      throw Error(ErrorKind::kDuplicatePoints,
                  "alpha_filtration: points " + std::to_string(a) + " and " +
                      std::to_string(b) + " coincide");
    }
    Simplex s;
    s.dim = 1;
    s.vertices = {std::min(a, b), std::max(a, b), 0};
    s.facets = {s.vertices[0], s.vertices[1], 0};
    s.value = half_length(points[a], points[b]);
    f.simplices.push_back(s);
  }
  sort_filtration(f);
  return f;
}

}  // namespace

double circumradius(const Point2& a, const Point2& b, const Point2& c) {
  const double ab = std::hypot(a.x - b.x, a.y - b.y);
  const double bc = std::hypot(b.x - c.x, b.y - c.y);
  const double ca = std::hypot(c.x - a.x, c.y - a.y);
  const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (cross == 0.0) return std::numeric_limits<double>::infinity();
  return ab * bc * ca / (2.0 * std::abs(cross));
}

void sort_filtration(Filtration& filtration) {
  const auto& simplices = filtration.simplices;
  filtration.order.resize(simplices.size());
  std::iota(filtration.order.begin(), filtration.order.end(), 0U);
  std::sort(filtration.order.begin(), filtration.order.end(),
            [&](std::uint32_t i, std::uint32_t j) {
              const Simplex& a = simplices[i];
              const Simplex& b = simplices[j];
              if (a.value != b.value) return a.value < b.value;
              if (a.dim != b.dim) return a.dim < b.dim;
              return i < j;
            });
}

Filtration alpha_filtration(const Triangulation& tri) {
  const auto n = static_cast<std::uint32_t>(tri.points.size());
  const auto& pts = tri.points;

  Filtration f;
  f.num_vertices = n;
  f.simplices.reserve(n + tri.edges.size() + tri.triangles.size());
  for (std::uint32_t v = 0; v < n; ++v) {
    Simplex s;
    s.dim = 0;
    s.vertices = {v, 0, 0};
    f.simplices.push_back(s);
  }

  std::unordered_map<std::uint64_t, std::uint32_t> edge_index;
  edge_index.reserve(2 * tri.edges.size());
  auto key = [n](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * n + b;
  };
  const auto first_edge = static_cast<std::uint32_t>(f.simplices.size());
  for (const auto& e : tri.edges) {
    edge_index.emplace(key(e[0], e[1]),
                       static_cast<std::uint32_t>(f.simplices.size()));
    Simplex s;
    s.dim = 1;
    s.vertices = {e[0], e[1], 0};
    s.facets = {e[0], e[1], 0};
    s.value = half_length(pts[e[0]], pts[e[1]]);
    f.simplices.push_back(s);
  }

  const auto edge_count = static_cast<std::uint32_t>(tri.edges.size());
  std::vector<bool> attached(edge_count, false);
  std::vector<double> min_coface(edge_count,
                                 std::numeric_limits<double>::infinity());

  for (const auto& t : tri.triangles) {
    Simplex s;
    s.dim = 2;
    s.vertices = t;
    s.value = circumradius(pts[t[0]], pts[t[1]], pts[t[2]]);
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t a = t[i];
      const std::uint32_t b = t[(i + 1) % 3];
      const std::uint32_t o = t[(i + 2) % 3];
      const auto it = edge_index.find(key(a, b));
      if (it == edge_index.end()) {
        throw Error(ErrorKind::kInvalidArgument,
                    "alpha_filtration: triangle edge missing from edge list");
      }
      const std::uint32_t e = it->second;
      s.facets[i] = e;
      const std::uint32_t local = e - first_edge;
      min_coface[local] = std::min(min_coface[local], s.value);
      if (in_diametral_disc(pts[a], pts[b], pts[o])) attached[local] = true;
    }
    f.simplices.push_back(s);
  }

  for (std::uint32_t i = 0; i < edge_count; ++i) {
    if (attached[i]) f.simplices[first_edge + i].value = min_coface[i];
  }
  // A face never enters after its coface, even under rounding.
  for (auto& s : f.simplices) {
    if (s.dim != 2) continue;
    for (int i = 0; i < 3; ++i) {
      s.value = std::max(s.value, f.simplices[s.facets[i]].value);
    }
  }

  sort_filtration(f);
  return f;
}

Filtration alpha_filtration(std::span<const Point2> points) {
  for (const Point2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "alpha_filtration: non-finite coordinate");
    }
  }
  if (points.size() < 3) return path_filtration(points);
  try {
    return alpha_filtration(delaunay(points));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kAllCollinear) return path_filtration(points);
    throw;
  }
}

}  // namespace apfstat::geometry

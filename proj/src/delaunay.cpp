// Incremental Delaunay triangulation. Points are inserted in lexicographic
// order, so every new point lies outside the current convex hull: it is
// connected to the visible hull edges and local Delaunay-ness is restored by
// Lawson edge flips.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "apfstat/error.hpp"
#include "apfstat/geometry.hpp"

namespace apfstat::geometry {
namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

inline std::uint32_t next_edge(std::uint32_t e) { return e % 3 == 2 ? e - 2 : e + 1; }
inline std::uint32_t prev_edge(std::uint32_t e) { return e % 3 == 0 ? e + 2 : e - 1; }

class Builder {
 public:
  explicit Builder(std::span<const Point2> points)
      : points_(points),
        hull_next_(points.size(), kNone),
        hull_prev_(points.size(), kNone),
        hull_tri_(points.size(), kNone) {}

  Triangulation run();

 private:
  // True iff p[d] is inside the circle through the counterclockwise triangle
  // (a, b, c) after symbolic perturbation: each lifted point |p_i|^2 is raised
  // by eps_i with eps_0 >> eps_1 >> ... so ties are decided by the lowest
  // index whose perturbation coefficient is non-zero.
  bool in_circle(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                 std::uint32_t d) const;
  double orient(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    return orient2d(points_[a], points_[b], points_[c]);
  }

  std::uint32_t add_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                             std::uint32_t ha, std::uint32_t hb,
                             std::uint32_t hc);
  void link(std::uint32_t a, std::uint32_t b) {
    halfedges_[a] = b;
    if (b != kNone) halfedges_[b] = a;
  }
  void replace_hull_edge(std::uint32_t from, std::uint32_t to);
  void legalize(std::uint32_t edge);
  void insert(std::uint32_t p, std::uint32_t last);

  std::span<const Point2> points_;
  std::vector<std::uint32_t> tris_;
  std::vector<std::uint32_t> halfedges_;
  std::vector<std::uint32_t> hull_next_;
  std::vector<std::uint32_t> hull_prev_;
  // Half-edge running along the hull from v to hull_next_[v].
  std::vector<std::uint32_t> hull_tri_;
  std::uint32_t hull_start_ = kNone;
  std::vector<std::uint32_t> stack_;
};

bool Builder::in_circle(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                        std::uint32_t d) const {
  const double det = incircle(points_[a], points_[b], points_[c], points_[d]);
  if (det != 0.0) return det > 0.0;

  // Coefficients of the lifted coordinates in the incircle determinant.
  struct Term {
    std::uint32_t index;
    double coefficient;
  };
  std::array<Term, 4> terms{{{a, 0.0}, {b, 0.0}, {c, 0.0}, {d, 0.0}}};
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.index < y.index; });
  for (const Term& term : terms) {
    double coefficient = 0.0;
    if (term.index == a) {
      coefficient = orient(d, b, c);
    } else if (term.index == b) {
      coefficient = orient(a, d, c);
    } else if (term.index == c) {
      coefficient = orient(a, b, d);
    } else {
      coefficient = -orient(a, b, c);
    }
    if (coefficient != 0.0) return coefficient < 0.0;
  }
  return false;
}

std::uint32_t Builder::add_triangle(std::uint32_t a, std::uint32_t b,
                                    std::uint32_t c, std::uint32_t ha,
                                    std::uint32_t hb, std::uint32_t hc) {
  const auto t = static_cast<std::uint32_t>(tris_.size());
  tris_.insert(tris_.end(), {a, b, c});
  halfedges_.insert(halfedges_.end(), {kNone, kNone, kNone});
  link(t, ha);
  link(t + 1, hb);
  link(t + 2, hc);
  return t;
}

void Builder::replace_hull_edge(std::uint32_t from, std::uint32_t to) {
  std::uint32_t v = hull_start_;
  do {
    if (hull_tri_[v] == from) {
      hull_tri_[v] = to;
      return;
    }
    v = hull_next_[v];
  } while (v != hull_start_);
}

void Builder::legalize(std::uint32_t edge) {
  stack_.clear();
  stack_.push_back(edge);
  while (!stack_.empty()) {
    const std::uint32_t a = stack_.back();
    stack_.pop_back();
    const std::uint32_t b = halfedges_[a];
    if (b == kNone) continue;

    const std::uint32_t al = next_edge(a);
    const std::uint32_t ar = prev_edge(a);
    const std::uint32_t bl = prev_edge(b);
    const std::uint32_t br = next_edge(b);

    const std::uint32_t p0 = tris_[ar];
    const std::uint32_t pr = tris_[a];
    const std::uint32_t pl = tris_[al];
    const std::uint32_t p1 = tris_[bl];

    if (!in_circle(pr, pl, p0, p1)) continue;

    tris_[a] = p1;
    tris_[b] = p0;

    const std::uint32_t hbl = halfedges_[bl];
    const std::uint32_t har = halfedges_[ar];
    if (hbl == kNone) replace_hull_edge(bl, a);
    if (har == kNone) replace_hull_edge(ar, b);
    link(a, hbl);
    link(b, har);
    link(ar, bl);

    stack_.push_back(br);
    stack_.push_back(a);
  }
}

void Builder::insert(std::uint32_t p, std::uint32_t last) {
  std::uint32_t start = last;
  while (orient(hull_prev_[start], start, p) < 0.0) {
    start = hull_prev_[start];
    if (start == last) break;
  }

  std::uint32_t v = start;
  std::uint32_t prev_spoke = kNone;  // half-edge p -> v in the previous triangle
  std::uint32_t first_spoke = kNone;
  std::vector<std::uint32_t> new_edges;
  while (orient(v, hull_next_[v], p) < 0.0) {
    const std::uint32_t n = hull_next_[v];
    // Triangle (v, p, n): half-edges v->p, p->n, n->v.
    const std::uint32_t t = add_triangle(v, p, n, prev_spoke, kNone, hull_tri_[v]);
    if (first_spoke == kNone) first_spoke = t;
    prev_spoke = t + 1;
    new_edges.push_back(t + 2);
    if (v != start) {
      hull_next_[v] = kNone;
      hull_prev_[v] = kNone;
    }
    v = n;
  }
  if (first_spoke == kNone) {
    throw Error(ErrorKind::kNumericFailure,
                "delaunay: inserted point sees no hull edge");
  }

  hull_next_[start] = p;
  hull_prev_[p] = start;
  hull_next_[p] = v;
  hull_prev_[v] = p;
  hull_tri_[start] = first_spoke;
  hull_tri_[p] = prev_spoke;
  hull_start_ = p;

  for (std::uint32_t e : new_edges) legalize(e);
}

Triangulation Builder::run() {
  const auto n = static_cast<std::uint32_t>(points_.size());
  std::vector<std::uint32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0U);
  std::sort(ids.begin(), ids.end(), [&](std::uint32_t i, std::uint32_t j) {
    const Point2& a = points_[i];
    const Point2& b = points_[j];
    return a.x < b.x || (a.x == b.x && (a.y < b.y || (a.y == b.y && i < j)));
  });
  for (std::uint32_t i = 1; i < n; ++i) {
    if (points_[ids[i]] == points_[ids[i - 1]]) {
      throw Error(ErrorKind::kDuplicatePoints,
                  "delaunay: points " + std::to_string(ids[i - 1]) + " and " +
                      std::to_string(ids[i]) + " coincide");
    }
  }

  std::uint32_t apex = 2;
  while (apex < n && orient(ids[0], ids[1], ids[apex]) == 0.0) ++apex;
  if (apex == n) {
    throw Error(ErrorKind::kAllCollinear, "delaunay: all points are collinear");
  }

  tris_.reserve(6 * static_cast<std::size_t>(n));
  halfedges_.reserve(6 * static_cast<std::size_t>(n));

  // Fan from the first non-collinear point over the collinear prefix.
  const std::uint32_t k = ids[apex];
  const bool left = orient(ids[0], ids[1], k) > 0.0;
  std::uint32_t shared = kNone;
  std::vector<std::uint32_t> chain_edges;  // half-edges along the prefix
  for (std::uint32_t i = 0; i + 1 < apex; ++i) {
    const std::uint32_t u = ids[i];
    const std::uint32_t w = ids[i + 1];
    if (left) {
      // (u, w, k): u->w, w->k, k->u. k->u is shared with the previous fan
      // triangle's w->k edge.
      const std::uint32_t t = add_triangle(u, w, k, kNone, kNone, shared);
      shared = t + 1;
      chain_edges.push_back(t);
    } else {
      // (w, u, k): w->u, u->k, k->w.
      const std::uint32_t t = add_triangle(w, u, k, kNone, shared, kNone);
      shared = t + 2;
      chain_edges.push_back(t);
    }
  }

  // Hull as a counterclockwise cycle.
  const std::uint32_t triangles_in_fan = apex - 1;
  if (left) {
    for (std::uint32_t i = 0; i + 1 < apex; ++i) {
      hull_next_[ids[i]] = ids[i + 1];
      hull_prev_[ids[i + 1]] = ids[i];
      hull_tri_[ids[i]] = chain_edges[i];
    }
    hull_next_[ids[apex - 1]] = k;
    hull_prev_[k] = ids[apex - 1];
    hull_tri_[ids[apex - 1]] = 3 * (triangles_in_fan - 1) + 1;
    hull_next_[k] = ids[0];
    hull_prev_[ids[0]] = k;
    hull_tri_[k] = 2;
  } else {
    for (std::uint32_t i = apex - 1; i > 0; --i) {
      hull_next_[ids[i]] = ids[i - 1];
      hull_prev_[ids[i - 1]] = ids[i];
      hull_tri_[ids[i]] = chain_edges[i - 1];
    }
    hull_next_[ids[0]] = k;
    hull_prev_[k] = ids[0];
    hull_tri_[ids[0]] = 1;
    hull_next_[k] = ids[apex - 1];
    hull_prev_[ids[apex - 1]] = k;
    hull_tri_[k] = 3 * (triangles_in_fan - 1) + 2;
  }
  hull_start_ = k;

  std::uint32_t last = k;
  for (std::uint32_t i = apex + 1; i < n; ++i) {
    insert(ids[i], last);
    last = ids[i];
  }

  Triangulation out;
  out.points.assign(points_.begin(), points_.end());
  out.triangles.reserve(tris_.size() / 3);
  for (std::size_t t = 0; t < tris_.size(); t += 3) {
    out.triangles.push_back({tris_[t], tris_[t + 1], tris_[t + 2]});
  }
  for (std::uint32_t e = 0; e < tris_.size(); ++e) {
    const std::uint32_t opposite = halfedges_[e];
    if (opposite == kNone || opposite > e) {
      const std::uint32_t a = tris_[e];
      const std::uint32_t b = tris_[next_edge(e)];
      out.edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace

Triangulation delaunay(std::span<const Point2> points) {
  if (points.size() < 3) {
    throw Error(ErrorKind::kInvalidArgument,
                "delaunay: at least 3 points are required");
  }
  if (points.size() >= kNone / 8) {
    throw Error(ErrorKind::kInvalidArgument, "delaunay: too many points");
  }
  for (const Point2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "delaunay: non-finite coordinate");
    }
  }
  return Builder(points).run();
}

}  // namespace apfstat::geometry

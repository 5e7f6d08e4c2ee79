#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace apfstat::geometry {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Exact-sign predicates. The returned magnitude is only an approximation of
// the determinant; the sign is always correct.
//
// orient2d > 0 iff a, b, c make a counterclockwise turn.
double orient2d(const Point2& a, const Point2& b, const Point2& c);
// incircle > 0 iff d lies strictly inside the circle through a, b, c, given
// that a, b, c are counterclockwise.
double incircle(const Point2& a, const Point2& b, const Point2& c,
                const Point2& d);

// Triangles hold indices into `points` in counterclockwise order.
struct Triangulation {
  std::vector<Point2> points;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  // Undirected edges as (lo, hi) index pairs, sorted lexicographically.
  std::vector<std::array<std::uint32_t, 2>> edges;
};

// Delaunay triangulation with exact predicates. Co-circular configurations
// are resolved by a symbolic perturbation of the lifted points keyed to the
// input index, so the output is unique for every input.
//
// Throws Error(kDuplicatePoints) on repeated coordinates, Error(kAllCollinear)
// when no triangle exists, Error(kInvalidArgument) on fewer than 3 or
// non-finite points.
Triangulation delaunay(std::span<const Point2> points);

struct Simplex {
  std::uint8_t dim = 0;                     // 0, 1 or 2
  std::array<std::uint32_t, 3> vertices{};  // first dim+1 entries used
  // Simplex indices of the codimension-1 faces; first dim+1 entries used
  // for edges and triangles, unused for vertices.
  std::array<std::uint32_t, 3> facets{};
  double value = 0.0;
};

// Simplices of a filtered complex. `order` lists simplex indices sorted by
// (value, dim, index); faces always precede their cofaces.
struct Filtration {
  std::vector<Simplex> simplices;
  std::vector<std::uint32_t> order;
  std::uint32_t num_vertices = 0;
};

double circumradius(const Point2& a, const Point2& b, const Point2& c);

// Alpha-complex filtration values on a Delaunay triangulation: vertices 0,
// triangles their circumradius, edges half their length when their diametral
// disc holds no other point (Gabriel), else the smallest circumradius of an
// incident triangle.
Filtration alpha_filtration(const Triangulation& tri);

// Alpha filtration of a raw point cloud. Unlike delaunay(), this also accepts
// one or two points and collinear inputs, whose complex is the path through
// the points in sorted order.
Filtration alpha_filtration(std::span<const Point2> points);

// Sort simplices by (value, dim, index) and fill `order`.
void sort_filtration(Filtration& filtration);

}  // namespace apfstat::geometry

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "apfstat/geometry.hpp"

namespace apfstat::persistence {

struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;
  std::uint32_t mult = 1;

  double lifetime() const { return death - birth; }
  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

// Finite part of a persistence diagram in one homology dimension. After
// normalize(), points are sorted by (birth, death), every point satisfies
// 0 <= birth < death < inf, and coincident points are merged into one entry
// carrying the summed multiplicity.
struct PersistenceDiagram {
  int dim = 0;
  std::vector<DiagramPoint> points;

  void normalize();
  std::uint32_t total_multiplicity() const;
  friend bool operator==(const PersistenceDiagram&,
                         const PersistenceDiagram&) = default;
};

// How the elder rule decides between two merging components of equal birth.
// Deterministic keeps the component holding the smallest vertex index;
// Seeded flips a fair coin from a generator seeded with `seed`.
struct TieBreak {
  enum class Kind { kDeterministic, kSeeded };
  Kind kind = Kind::kDeterministic;
  std::uint64_t seed = 0;

  static TieBreak deterministic() { return {}; }
  static TieBreak seeded(std::uint64_t seed) { return {Kind::kSeeded, seed}; }
};

// A persistence pair as positions in Filtration::order. Essential classes
// have death == kEssential.
struct IndexPair {
  static constexpr std::uint32_t kEssential = 0xffffffffU;
  std::uint32_t birth = 0;
  std::uint32_t death = kEssential;
  int dim = 0;
};

// Boundary-matrix reduction over Z/2 with the clearing optimization:
// dimension-2 columns are reduced first and every pivot they produce marks an
// edge column that is known to reduce to zero and is skipped.
std::vector<IndexPair> reduce_boundary(const geometry::Filtration& filtration);

// Diagram of dimension k (0 or 1) of an alpha (or any planar) filtration.
// k = 0 uses a union-find with the elder rule, k = 1 the boundary reduction.
PersistenceDiagram ph_pointcloud(const geometry::Filtration& filtration, int k,
                                 TieBreak tiebreak = TieBreak::deterministic());

struct HeightVertex {
  std::int64_t id = 0;
  double height = 0.0;
  std::optional<std::array<double, 3>> coords;
};

// Graph filtered by a height function: a vertex enters at its height, an edge
// at the larger height of its endpoints.
struct HeightGraph {
  std::vector<HeightVertex> vertices;
  std::vector<std::array<std::int64_t, 2>> edges;

  // Throws Error(kUnknownVertexInEdge) or Error(kInvalidArgument).
  void validate() const;
};

PersistenceDiagram ph_sublevel(const HeightGraph& graph,
                               TieBreak tiebreak = TieBreak::deterministic());

// Bottleneck distance under the L-infinity ground metric, points allowed to
// match the diagonal. Multiplicities expand into copies.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

}  // namespace apfstat::persistence

#include "apfstat/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include "apfstat/error.hpp"

namespace apfstat::persistence {
namespace {

// Union-find where each root remembers the birth of its component and the
// smallest vertex index it contains.
class ElderUnionFind {
 public:
  ElderUnionFind(std::vector<double> births, TieBreak tiebreak)
      : parent_(births.size()),
        birth_(std::move(births)),
        smallest_(parent_.size()),
        tiebreak_(tiebreak),
        rng_(tiebreak.seed) {
    std::iota(parent_.begin(), parent_.end(), 0U);
    std::iota(smallest_.begin(), smallest_.end(), 0U);
  }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::uint32_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Merges the components of a and b. Returns the birth of the component that
  // dies, or nullopt if a and b were already connected.
  std::optional<double> merge(std::uint32_t a, std::uint32_t b) {
    std::uint32_t ra = find(a);
    std::uint32_t rb = find(b);
    if (ra == rb) return std::nullopt;
    bool a_survives = false;
    if (birth_[ra] != birth_[rb]) {
      a_survives = birth_[ra] < birth_[rb];
    } else if (tiebreak_.kind == TieBreak::Kind::kSeeded) {
      a_survives = std::bernoulli_distribution(0.5)(rng_);
    } else {
      a_survives = smallest_[ra] < smallest_[rb];
    }
    if (!a_survives) std::swap(ra, rb);
    const double dying = birth_[rb];
    parent_[rb] = ra;
    smallest_[ra] = std::min(smallest_[ra], smallest_[rb]);
    return dying;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<double> birth_;
  std::vector<std::uint32_t> smallest_;
  TieBreak tiebreak_;
  std::mt19937_64 rng_;
};

using Column = std::vector<std::uint32_t>;  // sorted ascending positions

void add_column(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(),
                                source.end(), std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

void PersistenceDiagram::normalize() {
  std::erase_if(points, [](const DiagramPoint& p) {
    return !(p.birth < p.death) || !std::isfinite(p.death) || p.mult == 0;
  });
  std::sort(points.begin(), points.end(),
            [](const DiagramPoint& a, const DiagramPoint& b) {
              return a.birth < b.birth ||
                     (a.birth == b.birth && a.death < b.death);
            });
  std::vector<DiagramPoint> merged;
  merged.reserve(points.size());
  for (const DiagramPoint& p : points) {
    if (!merged.empty() && merged.back().birth == p.birth &&
        merged.back().death == p.death) {
      merged.back().mult += p.mult;
    } else {
      merged.push_back(p);
    }
  }
  points = std::move(merged);
}

std::uint32_t PersistenceDiagram::total_multiplicity() const {
  std::uint32_t total = 0;
  for (const auto& p : points) total += p.mult;
  return total;
}

std::vector<IndexPair> reduce_boundary(const geometry::Filtration& filtration) {
  const auto& order = filtration.order;
  const auto& simplices = filtration.simplices;
  const auto size = static_cast<std::uint32_t>(order.size());

  std::vector<std::uint32_t> position(simplices.size());
  for (std::uint32_t i = 0; i < size; ++i) position[order[i]] = i;

  constexpr std::uint32_t kFree = IndexPair::kEssential;
  std::vector<std::uint32_t> pivot_column(size, kFree);  // row -> column
  std::vector<bool> cleared(size, false);
  std::vector<bool> paired(size, false);
  std::vector<Column> reduced(size);
  std::vector<IndexPair> pairs;
  Column scratch;

  for (int dim = 2; dim >= 1; --dim) {
    for (std::uint32_t j = 0; j < size; ++j) {
      const geometry::Simplex& s = simplices[order[j]];
      if (s.dim != dim || cleared[j]) continue;
      Column column;
      for (int f = 0; f <= dim; ++f) column.push_back(position[s.facets[f]]);
      std::sort(column.begin(), column.end());
      while (!column.empty() && pivot_column[column.back()] != kFree) {
        add_column(column, reduced[pivot_column[column.back()]], scratch);
      }
      if (column.empty()) continue;
      const std::uint32_t low = column.back();
      pivot_column[low] = j;
      cleared[low] = true;
      paired[low] = true;
      paired[j] = true;
      pairs.push_back({low, j, dim - 1});
      reduced[j] = std::move(column);
    }
  }
  for (std::uint32_t i = 0; i < size; ++i) {
    if (paired[i]) continue;
    const geometry::Simplex& s = simplices[order[i]];
    // Unpaired simplices that were not cleared are positive: essential.
    pairs.push_back({i, IndexPair::kEssential, s.dim});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const IndexPair& a, const IndexPair& b) {
              return a.birth < b.birth;
            });
  return pairs;
}

PersistenceDiagram ph_pointcloud(const geometry::Filtration& filtration, int k,
                                 TieBreak tiebreak) {
  if (k != 0 && k != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "ph_pointcloud: homology dimension must be 0 or 1");
  }
  PersistenceDiagram diagram;
  diagram.dim = k;
  const auto& simplices = filtration.simplices;

  if (k == 0) {
    std::vector<double> births(filtration.num_vertices, 0.0);
    for (const auto& s : simplices) {
      if (s.dim == 0) births[s.vertices[0]] = s.value;
    }
    ElderUnionFind components(std::move(births), tiebreak);
    for (std::uint32_t idx : filtration.order) {
      const auto& s = simplices[idx];
      if (s.dim != 1) continue;
      if (auto dying = components.merge(s.vertices[0], s.vertices[1])) {
        diagram.points.push_back({*dying, s.value, 1});
      }
    }
  } else {
    for (const IndexPair& p : reduce_boundary(filtration)) {
      if (p.dim != 1 || p.death == IndexPair::kEssential) continue;
      diagram.points.push_back({simplices[filtration.order[p.birth]].value,
                                simplices[filtration.order[p.death]].value, 1});
    }
  }
  diagram.normalize();
  return diagram;
}

void HeightGraph::validate() const {
  std::unordered_map<std::int64_t, std::size_t> seen;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!std::isfinite(vertices[i].height)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "height graph: non-finite height at vertex " +
                      std::to_string(vertices[i].id));
    }
    if (!seen.emplace(vertices[i].id, i).second) {
      throw Error(ErrorKind::kInvalidArgument,
                  "height graph: repeated vertex id " +
                      std::to_string(vertices[i].id));
    }
  }
  for (const auto& e : edges) {
    for (std::int64_t id : e) {
      if (!seen.contains(id)) {
        throw Error(ErrorKind::kUnknownVertexInEdge,
                    "height graph: edge references unknown vertex " +
                        std::to_string(id));
      }
    }
  }
}

PersistenceDiagram ph_sublevel(const HeightGraph& graph, TieBreak tiebreak) {
  graph.validate();
  std::unordered_map<std::int64_t, std::uint32_t> index;
  std::vector<double> births;
  births.reserve(graph.vertices.size());
  for (const auto& v : graph.vertices) {
    index.emplace(v.id, static_cast<std::uint32_t>(births.size()));
    births.push_back(v.height);
  }

  struct Edge {
    std::uint32_t a;
    std::uint32_t b;
    double value;
  };
  std::vector<Edge> edges;
  edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    const std::uint32_t a = index.at(e[0]);
    const std::uint32_t b = index.at(e[1]);
    edges.push_back({a, b, std::max(births[a], births[b])});
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& x, const Edge& y) { return x.value < y.value; });

  PersistenceDiagram diagram;
  diagram.dim = 0;
  ElderUnionFind components(births, tiebreak);
  for (const Edge& e : edges) {
    if (auto dying = components.merge(e.a, e.b)) {
      diagram.points.push_back({*dying, e.value, 1});
    }
  }
  diagram.normalize();
  return diagram;
}

}  // namespace apfstat::persistence

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "apfstat/error.hpp"
#include "apfstat/persistence.hpp"

namespace apfstat::persistence {
namespace {

struct Expanded {
  double birth;
  double death;
};

std::vector<Expanded> expand(const PersistenceDiagram& d) {
  std::vector<Expanded> out;
  for (const auto& p : d.points) {
    for (std::uint32_t c = 0; c < p.mult; ++c) out.push_back({p.birth, p.death});
  }
  return out;
}

inline double linf(const Expanded& a, const Expanded& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

inline double to_diagonal(const Expanded& a) { return (a.death - a.birth) / 2.0; }

// Hopcroft-Karp on the bipartite graph whose left side is A followed by the
// diagonal projections of B, and whose right side is B followed by the
// diagonal projections of A.
class Matcher {
 public:
  Matcher(const std::vector<Expanded>& a, const std::vector<Expanded>& b)
      : a_(a), b_(b), n_(a.size()), m_(b.size()), size_(n_ + m_) {}

  bool perfect(double radius) {
    build(radius);
    match_left_.assign(size_, kFree);
    match_right_.assign(size_, kFree);
    std::size_t matched = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < size_; ++u) {
        if (match_left_[u] == kFree && dfs(u)) ++matched;
      }
    }
    return matched == size_;
  }

 private:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

  void build(double radius) {
    adj_.assign(size_, {});
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        if (linf(a_[i], b_[j]) <= radius) adj_[i].push_back(j);
      }
      if (to_diagonal(a_[i]) <= radius) adj_[i].push_back(m_ + i);
    }
    for (std::size_t j = 0; j < m_; ++j) {
      const std::size_t u = n_ + j;
      if (to_diagonal(b_[j]) <= radius) adj_[u].push_back(j);
      for (std::size_t i = 0; i < n_; ++i) adj_[u].push_back(m_ + i);
    }
  }

  bool bfs() {
    dist_.assign(size_, kFree);
    std::queue<std::size_t> queue;
    for (std::size_t u = 0; u < size_; ++u) {
      if (match_left_[u] == kFree) {
        dist_[u] = 0;
        queue.push(u);
      }
    }
    bool reachable = false;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = match_right_[v];
        if (w == kFree) {
          reachable = true;
        } else if (dist_[w] == kFree) {
          dist_[w] = dist_[u] + 1;
          queue.push(w);
        }
      }
    }
    return reachable;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      const std::size_t w = match_right_[v];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kFree;
    return false;
  }

  const std::vector<Expanded>& a_;
  const std::vector<Expanded>& b_;
  std::size_t n_;
  std::size_t m_;
  std::size_t size_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> dist_;
};

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.dim != b.dim) {
    throw Error(ErrorKind::kInvalidArgument,
                "bottleneck: diagrams of different dimensions");
  }
  const auto pa = expand(a);
  const auto pb = expand(b);
  if (pa.empty() && pb.empty()) return 0.0;

  std::vector<double> candidates{0.0};
  candidates.reserve(pa.size() * pb.size() + pa.size() + pb.size() + 1);
  for (const auto& p : pa) candidates.push_back(to_diagonal(p));
  for (const auto& q : pb) candidates.push_back(to_diagonal(q));
  for (const auto& p : pa) {
    for (const auto& q : pb) candidates.push_back(linf(p, q));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  // Routing every point to the diagonal is always feasible, so the largest
  // half-lifetime is an upper bound on the answer.
  Matcher matcher(pa, pb);
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (matcher.perfect(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace apfstat::persistence

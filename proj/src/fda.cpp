#include "apfstat/fda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "apfstat/error.hpp"
#include "apfstat/parallel.hpp"

namespace apfstat::fda {
namespace {

double pairs(double n) { return n * (n - 1.0) / 2.0; }

// ceil(x) that forgives a few ulps of excess, e.g. (1 - 1/3) * 3.
std::size_t ceil_count(double x) {
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

CurveSample pointwise_mean(std::span<const CurveSample> curves,
                           std::span<const std::size_t> members) {
  CurveSample mean;
  mean.window = curves.front().window;
  mean.values.assign(curves.front().n_grid(), 0.0);
  for (std::size_t i : members) {
    for (std::size_t j = 0; j < mean.values.size(); ++j) {
      mean.values[j] += curves[i].values[j];
    }
  }
  const auto count = static_cast<double>(members.size());
  for (double& v : mean.values) v /= count;
  return mean;
}

double squared_l2(const CurveSample& a, const CurveSample& b) {
  const double d = apf::curve_distance(a, b, apf::Norm::kL2);
  return d * d;
}

}  // namespace

std::vector<double> mbd(std::span<const CurveSample> curves) {
  apf::require_shared_grid(curves);
  const std::size_t r = curves.size();
  if (r < 2) {
    throw Error(ErrorKind::kInvalidArgument, "mbd: need at least two curves");
  }
  const std::size_t n = curves.front().n_grid();
  const double total_pairs = pairs(static_cast<double>(r));
  std::vector<double> inside(r, 0.0);
  std::vector<double> column(r);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < r; ++i) column[i] = curves[i].values[j];
    std::sort(column.begin(), column.end());
    for (std::size_t i = 0; i < r; ++i) {
      const double x = curves[i].values[j];
      const auto below = static_cast<double>(
          std::lower_bound(column.begin(), column.end(), x) - column.begin());
      const auto above = static_cast<double>(
          column.end() - std::upper_bound(column.begin(), column.end(), x));
      inside[i] += total_pairs - pairs(below) - pairs(above);
    }
  }
  const apf::Window& w = curves.front().window;
  const double scale =
      (w.hi - w.lo) / static_cast<double>(n) / total_pairs;
  for (double& v : inside) v *= scale;
  return inside;
}

std::vector<std::size_t> depth_order(std::span<const double> depths) {
  std::vector<std::size_t> order(depths.size());
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return depths[a] > depths[b];
                   });
  return order;
}

BoxplotResult functional_boxplot(std::span<const CurveSample> curves,
                                 double inflation) {
  if (curves.size() < 4) {
    throw Error(ErrorKind::kInvalidArgument,
                "functional_boxplot: need at least four curves");
  }
  if (!(inflation >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "functional_boxplot: inflation must be non-negative");
  }
  BoxplotResult result;
  result.depths = mbd(curves);
  const auto order = depth_order(result.depths);
  result.central_index = order.front();

  const std::size_t central = (curves.size() + 1) / 2;
  const std::size_t n = curves.front().n_grid();
  const apf::Window window = curves.front().window;
  for (CurveSample* c : {&result.central_lower, &result.central_upper,
                         &result.fence_lower, &result.fence_upper}) {
    c->window = window;
    c->values.resize(n);
  }
  for (std::size_t j = 0; j < n; ++j) {
    double lo = curves[order[0]].values[j];
    double hi = lo;
    for (std::size_t k = 1; k < central; ++k) {
      lo = std::min(lo, curves[order[k]].values[j]);
      hi = std::max(hi, curves[order[k]].values[j]);
    }
    result.central_lower.values[j] = lo;
    result.central_upper.values[j] = hi;
    const double range = hi - lo;
    // Keep an infinite inflation from turning a zero range into NaN.
    const double reach = range == 0.0 ? 0.0 : inflation * range;
    result.fence_lower.values[j] = lo - reach;
    result.fence_upper.values[j] = hi + reach;
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = curves[i].values[j];
      if (v < result.fence_lower.values[j] || v > result.fence_upper.values[j]) {
        result.outlier_indices.push_back(i);
        break;
      }
    }
  }
  return result;
}

CurveSample trimmed_mean(std::span<const CurveSample> curves, double alpha) {
  if (curves.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "trimmed_mean: empty sample");
  }
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "trimmed_mean: alpha must lie in [0, 1)");
  }
  apf::require_shared_grid(curves);
  if (curves.size() == 1) return curves.front();
  const std::size_t r = curves.size();
  const std::size_t keep = std::clamp<std::size_t>(
      ceil_count((1.0 - alpha) * static_cast<double>(r)), 1, r);
  const auto depths = mbd(curves);
  auto order = depth_order(depths);
  order.resize(keep);
  std::sort(order.begin(), order.end());
  return pointwise_mean(curves, order);
}

namespace {

KMeansResult lloyd(std::span<const CurveSample> curves, std::size_t k,
                   std::uint64_t seed, std::size_t max_iter) {
  const std::size_t r = curves.size();
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> pool(r);
  std::iota(pool.begin(), pool.end(), 0U);
  KMeansResult result;
  for (std::size_t c = 0; c < k; ++c) {
    std::uniform_int_distribution<std::size_t> pick(c, r - 1);
    std::swap(pool[c], pool[pick(rng)]);
    result.centres.push_back(curves[pool[c]]);
  }

  constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
  result.labels.assign(r, kUnassigned);
  std::vector<double> distance(r, 0.0);
  for (std::size_t iter = 0; iter < std::max<std::size_t>(max_iter, 1); ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t best = 0;
      double best_d = squared_l2(curves[i], result.centres[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = squared_l2(curves[i], result.centres[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (result.labels[i] != best) changed = true;
      result.labels[i] = best;
      distance[i] = best_d;
      objective += best_d;
    }

    // Re-seed empty clusters with the curve farthest from its centre.
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t label : result.labels) ++sizes[label];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t far = r;
      for (std::size_t i = 0; i < r; ++i) {
        if (sizes[result.labels[i]] < 2) continue;
        if (far == r || distance[i] > distance[far]) far = i;
      }
      if (far == r) break;
      --sizes[result.labels[far]];
      objective -= distance[far];
      result.labels[far] = c;
      distance[far] = 0.0;
      sizes[c] = 1;
      changed = true;
    }
    result.objective_trace.push_back(objective);
    result.iterations = iter + 1;
    if (!changed) break;

    for (std::size_t c = 0; c < k; ++c) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < r; ++i) {
        if (result.labels[i] == c) members.push_back(i);
      }
      result.centres[c] = pointwise_mean(curves, members);
    }
  }
  return result;
}

}  // namespace

KMeansResult kmeans_curves(std::span<const CurveSample> curves, std::size_t k,
                           std::uint64_t seed, std::size_t max_iter,
                           std::size_t restarts) {
  const std::size_t r = curves.size();
  if (k < 1 || k >= r) {
    throw Error(ErrorKind::kBadK, "kmeans_curves: need 1 <= K < r, got K=" +
                                      std::to_string(k) + ", r=" +
                                      std::to_string(r));
  }
  apf::require_shared_grid(curves);

  KMeansResult best = lloyd(curves, k, seed, max_iter);
  for (std::size_t s = 1; s < restarts; ++s) {
    KMeansResult next = lloyd(curves, k, derive_seed(seed, s), max_iter);
    if (next.objective_trace.back() < best.objective_trace.back()) {
      best = std::move(next);
    }
  }
  return best;
}

std::size_t classify(const CurveSample& curve,
                     std::span<const std::vector<CurveSample>> groups,
                     double alpha) {
  if (groups.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "classify: no groups");
  }
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "classify: group " + std::to_string(g) + " is empty");
    }
    const CurveSample centre = trimmed_mean(groups[g], alpha);
    const double d = apf::curve_distance(curve, centre, apf::Norm::kL2);
    if (d < best_d) {
      best_d = d;
      best = g;
    }
  }
  return best;
}

double mislabel_rate(std::span<const std::size_t> labels,
                     std::span<const std::size_t> truth, std::size_t k) {
  if (labels.size() != truth.size() || labels.empty()) {
    throw Error(ErrorKind::kLengthMismatch,
                "mislabel_rate: label vectors differ in length");
  }
  if (k < 1 || k > 8) {
    throw Error(ErrorKind::kBadK, "mislabel_rate: K must lie in [1, 8]");
  }
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0U);
  std::size_t best = labels.size();
  do {
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] >= k || perm[labels[i]] != truth[i]) ++wrong;
    }
    best = std::min(best, wrong);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(labels.size());
}

}  // namespace apfstat::fda

#include "apfstat/envelope.hpp"

#include <algorithm>
#include <string>

#include "apfstat/error.hpp"

namespace apfstat::envelope {

std::size_t max_rank(std::size_t num_curves) {
  if (num_curves < 2) return 1;
  return std::max<std::size_t>(1, (num_curves - 1) / 2);
}

Band bounding_curves(std::span<const CurveSample> curves, std::size_t l) {
  apf::require_shared_grid(curves);
  const std::size_t count = curves.size();
  if (l < 1 || l > max_rank(count)) {
    throw Error(ErrorKind::kBadRank,
                "bounding_curves: rank " + std::to_string(l) +
                    " outside [1, " + std::to_string(max_rank(count)) + "]");
  }
  const std::size_t n = curves.front().n_grid();
  Band band;
  band.lower.window = band.upper.window = curves.front().window;
  band.lower.values.resize(n);
  band.upper.values.resize(n);
  std::vector<double> column(count);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < count; ++i) column[i] = curves[i].values[j];
    std::sort(column.begin(), column.end());
    band.lower.values[j] = column[l - 1];
    band.upper.values[j] = column[count - l];
  }
  return band;
}

std::vector<std::size_t> extreme_ranks(std::span<const CurveSample> curves) {
  apf::require_shared_grid(curves);
  const std::size_t count = curves.size();
  const std::size_t cap = max_rank(count);
  const std::size_t n = curves.front().n_grid();
  std::vector<std::size_t> ranks(count, cap);
  std::vector<double> column(count);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < count; ++i) column[i] = curves[i].values[j];
    std::sort(column.begin(), column.end());
    for (std::size_t i = 0; i < count; ++i) {
      const double x = curves[i].values[j];
      // x >= l-th smallest iff at least l values are <= x; symmetric above.
      const auto at_most = static_cast<std::size_t>(
          std::upper_bound(column.begin(), column.end(), x) - column.begin());
      const auto at_least = static_cast<std::size_t>(
          column.end() - std::lower_bound(column.begin(), column.end(), x));
      ranks[i] = std::min(ranks[i], std::min(at_most, at_least));
    }
  }
  return ranks;
}

EnvelopeResult rank_envelope_test(const CurveSample& observed,
                                  std::span<const CurveSample> simulated,
                                  double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "rank_envelope_test: alpha must lie in (0, 1)");
  }
  if (simulated.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "rank_envelope_test: no simulated curves");
  }
  std::vector<CurveSample> all;
  all.reserve(simulated.size() + 1);
  all.push_back(observed);
  all.insert(all.end(), simulated.begin(), simulated.end());

  EnvelopeResult result;
  result.ranks = extreme_ranks(all);
  const std::size_t total = all.size();
  const std::size_t cap = max_rank(total);

  // count_below[l] = #{i : R_i < l}
  std::vector<std::size_t> count_below(cap + 2, 0);
  for (std::size_t rank : result.ranks) {
    for (std::size_t l = rank + 1; l <= cap + 1; ++l) ++count_below[l];
  }
  const double denom = static_cast<double>(total);
  std::size_t l_alpha = 1;
  for (std::size_t l = 1; l <= cap; ++l) {
    if (static_cast<double>(count_below[l]) / denom <= alpha) l_alpha = l;
  }
  result.l_alpha = l_alpha;
  result.no_valid_l =
      l_alpha == 1 &&
      (cap < 2 || static_cast<double>(count_below[2]) / denom > alpha);

  const std::size_t r0 = result.ranks.front();
  result.statistic = static_cast<double>(count_below[r0 + 1]) / denom;
  result.liberal_statistic = static_cast<double>(count_below[r0]) / denom;
  result.reject = r0 < l_alpha;
  result.band = bounding_curves(all, l_alpha);
  return result;
}

EnvelopeResult combine_envelopes(std::span<const EnvelopeInput> inputs,
                                 double alpha) {
  if (inputs.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "combine_envelopes: no inputs");
  }
  const std::size_t r = inputs.front().simulated.size();
  for (const auto& input : inputs) {
    if (input.simulated.size() != r) {
      throw Error(ErrorKind::kLengthMismatch,
                  "combine_envelopes: inputs hold different numbers of "
                  "simulated curves");
    }
    std::vector<CurveSample> block{input.observed};
    block.insert(block.end(), input.simulated.begin(), input.simulated.end());
    apf::require_shared_grid(block);
  }
  if (inputs.size() == 1) {
    return rank_envelope_test(inputs.front().observed,
                              inputs.front().simulated, alpha);
  }

  auto join = [&](auto pick) {
    CurveSample joined;
    for (const auto& input : inputs) {
      const CurveSample& part = pick(input);
      joined.values.insert(joined.values.end(), part.values.begin(),
                           part.values.end());
    }
    joined.window = {0.0, static_cast<double>(joined.values.size() - 1)};
    return joined;
  };
  const CurveSample observed =
      join([](const EnvelopeInput& in) -> const CurveSample& { return in.observed; });
  std::vector<CurveSample> simulated;
  simulated.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    simulated.push_back(join(
        [i](const EnvelopeInput& in) -> const CurveSample& { return in.simulated[i]; }));
  }
  return rank_envelope_test(observed, simulated, alpha);
}

}  // namespace apfstat::envelope

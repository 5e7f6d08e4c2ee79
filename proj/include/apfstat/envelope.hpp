#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "apfstat/apf.hpp"

namespace apfstat::envelope {

using apf::CurveSample;

struct Band {
  CurveSample lower;
  CurveSample upper;
};

// Largest admissible band index for a set of r + 1 curves: floor(r / 2),
// but never below 1 so that two curves still have their min/max band.
std::size_t max_rank(std::size_t num_curves);

// Pointwise l-th smallest and l-th largest values.
// Throws Error(kGridMismatch) or Error(kBadRank) when l is outside
// [1, max_rank].
Band bounding_curves(std::span<const CurveSample> curves, std::size_t l);

// Extreme rank of every curve: the largest l whose l-th bounding curves
// enclose it on the whole grid, capped at max_rank.
std::vector<std::size_t> extreme_ranks(std::span<const CurveSample> curves);

struct EnvelopeResult {
  std::size_t l_alpha = 1;
  Band band;                        // the l_alpha-th bounding curves
  std::vector<std::size_t> ranks;   // R_0 (observed) first, then R_1..R_r
  // Fraction of the r + 1 curves with rank <= R_0. This is the conservative
  // p-value: reject <=> statistic <= alpha <=> the observed curve leaves the
  // l_alpha band somewhere.
  double statistic = 1.0;
  // Fraction with rank strictly below R_0, reported for reference.
  double liberal_statistic = 1.0;
  bool reject = false;
  // Only the trivial min/max band qualified; the test cannot reject.
  bool no_valid_l = false;
};

// Global rank envelope test of the observed curve against r simulated ones.
EnvelopeResult rank_envelope_test(const CurveSample& observed,
                                  std::span<const CurveSample> simulated,
                                  double alpha);

struct EnvelopeInput {
  CurveSample observed;
  std::vector<CurveSample> simulated;
};

// Joins several summary functions of the same subjects end to end (e.g.
// APF_0 followed by APF_1) and runs a single rank envelope test. The joined
// curves live on an index window [0, total - 1]. Throws
// Error(kLengthMismatch) when the inputs hold different numbers of
// simulations.
EnvelopeResult combine_envelopes(std::span<const EnvelopeInput> inputs,
                                 double alpha);

}  // namespace apfstat::envelope

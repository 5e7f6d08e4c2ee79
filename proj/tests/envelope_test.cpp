#include <cmath>
#include <random>

#include "apfstat/envelope.hpp"
#include "apfstat/error.hpp"
#include "gtest/gtest.h"

using apfstat::Error;
using apfstat::ErrorKind;
using namespace apfstat::envelope;
using apfstat::apf::Window;

namespace {

CurveSample constant(double c, std::size_t n = 9) {
  return {Window{0, 1}, std::vector<double>(n, c)};
}

std::vector<CurveSample> constants(std::initializer_list<double> values) {
  std::vector<CurveSample> out;
  for (double v : values) out.push_back(constant(v));
  return out;
}

// Random walk curves; all IID.
std::vector<CurveSample> walks(std::size_t count, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<CurveSample> out(count);
  for (auto& c : out) {
    c.window = {0, 1};
    double v = 0.0;
    for (std::size_t j = 0; j < n; ++j) c.values.push_back(v += step(rng));
  }
  return out;
}

}  // namespace

TEST(bounding_curves, examples) {
  const auto five = constants({3, 1, 5, 2, 4});
  auto band = bounding_curves(five, 1);
  EXPECT_EQ(band.lower.values, constant(1).values);
  EXPECT_EQ(band.upper.values, constant(5).values);
  band = bounding_curves(five, 2);
  EXPECT_EQ(band.lower.values, constant(2).values);
  EXPECT_EQ(band.upper.values, constant(4).values);

  const std::vector<CurveSample> same(7, constant(1.5));
  for (std::size_t l = 1; l <= 3; ++l) {
    band = bounding_curves(same, l);
    EXPECT_EQ(band.lower.values, same[0].values);
    EXPECT_EQ(band.upper.values, same[0].values);
  }
  try {
    bounding_curves(five, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBadRank);
  }
  EXPECT_THROW(bounding_curves(five, 0), Error);
  auto mixed = five;
  mixed[2] = constant(5, 10);
  try {
    bounding_curves(mixed, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGridMismatch);
  }
}

TEST(bounding_curves, nested_in_l) {
  std::mt19937_64 rng(1);
  const auto curves = walks(41, 30, rng);
  for (std::size_t l = 1; l < 20; ++l) {
    const auto outer = bounding_curves(curves, l);
    const auto inner = bounding_curves(curves, l + 1);
    for (std::size_t j = 0; j < 30; ++j) {
      ASSERT_LE(outer.lower.values[j], inner.lower.values[j]);
      ASSERT_GE(outer.upper.values[j], inner.upper.values[j]);
      ASSERT_LE(inner.lower.values[j], inner.upper.values[j]);
    }
  }
}

TEST(extreme_ranks, examples) {
  EXPECT_EQ(extreme_ranks(constants({1, 2, 3, 4, 5})),
            (std::vector<std::size_t>{1, 2, 2, 2, 1}));
  EXPECT_EQ(extreme_ranks(std::vector<CurveSample>(7, constant(0))),
            std::vector<std::size_t>(7, 3));
  // Curve 0 is the maximum at grid point 0 and the minimum at point 1.
  std::vector<CurveSample> crossing(5, constant(0, 2));
  for (std::size_t i = 1; i < 5; ++i) crossing[i].values = {double(i), double(i)};
  crossing[0].values = {10, -10};
  EXPECT_EQ(extreme_ranks(crossing)[0], 1U);
}

TEST(extreme_ranks, invariant_under_monotone_map) {
  std::mt19937_64 rng(2);
  auto curves = walks(30, 20, rng);
  const auto ranks = extreme_ranks(curves);
  for (auto& c : curves) {
    for (double& v : c.values) v = std::exp(v) * 3.0 + 1.0;
  }
  EXPECT_EQ(extreme_ranks(curves), ranks);
}

TEST(rank_envelope_test, all_tied_accepts) {
  const std::vector<CurveSample> simulated(99, constant(2));
  const auto result = rank_envelope_test(constant(2), simulated, 0.05);
  EXPECT_FALSE(result.reject);
  EXPECT_EQ(result.liberal_statistic, 0.0);
  EXPECT_EQ(result.statistic, 1.0);
}

TEST(rank_envelope_test, far_observation_rejects) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::vector<CurveSample> simulated(99);
  // Smooth curves: a random level plus a small common trend, all below 5.
  for (auto& c : simulated) {
    c.window = {0, 1};
    const double level = u(rng) * 0.9;
    for (int j = 0; j < 20; ++j) c.values.push_back(level + 0.02 * j);
  }
  const CurveSample observed{{0, 1}, std::vector<double>(20, 10.0)};
  const auto result = rank_envelope_test(observed, simulated, 0.05);
  EXPECT_EQ(result.ranks[0], 1U);
  EXPECT_GE(result.l_alpha, 2U);
  EXPECT_TRUE(result.reject);
  EXPECT_LE(result.statistic, 0.05);
  EXPECT_LE(result.l_alpha, 49U);
  for (int j = 0; j < 20; ++j) {
    EXPECT_LE(result.band.lower.values[j], result.band.upper.values[j]);
    EXPECT_GT(observed.values[j], result.band.upper.values[j]);
  }
}

TEST(rank_envelope_test, decision_matches_statistic) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto curves = walks(40, 15, rng);
    const std::span<const CurveSample> sim(curves.begin() + 1, curves.end());
    for (double alpha : {0.05, 0.1, 0.3}) {
      const auto r = rank_envelope_test(curves[0], sim, alpha);
      ASSERT_EQ(r.reject, r.statistic <= alpha);
      ASSERT_GE(r.l_alpha, 1U);
      ASSERT_LE(r.l_alpha, 19U);
    }
  }
}

TEST(rank_envelope_test, level_under_exchangeability) {
  // 500 replications of IID curves, r = 99: rejection rate within
  // alpha + 2 standard errors.
  std::mt19937_64 rng(5);
  int rejections = 0;
  constexpr int kReps = 500;
  for (int rep = 0; rep < kReps; ++rep) {
    const auto curves = walks(100, 25, rng);
    const std::span<const CurveSample> sim(curves.begin() + 1, curves.end());
    rejections += rank_envelope_test(curves[0], sim, 0.05).reject ? 1 : 0;
  }
  const double rate = double(rejections) / kReps;
  EXPECT_LE(rate, 0.05 + 2 * std::sqrt(0.05 * 0.95 / kReps));
}

TEST(rank_envelope_test, no_valid_l_flag) {
  std::mt19937_64 rng(6);
  const auto curves = walks(10, 10, rng);
  const std::span<const CurveSample> sim(curves.begin() + 1, curves.end());
  const auto r = rank_envelope_test(curves[0], sim, 0.01);
  EXPECT_EQ(r.l_alpha, 1U);
  EXPECT_TRUE(r.no_valid_l);
  EXPECT_FALSE(r.reject);
  EXPECT_THROW(rank_envelope_test(curves[0], sim, 0.0), Error);
}

TEST(combine_envelopes, single_and_duplicate) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = walks(60, 12, rng);
    const auto b = walks(60, 8, rng);
    EnvelopeInput first{a[0], {a.begin() + 1, a.end()}};
    EnvelopeInput second{b[0], {b.begin() + 1, b.end()}};
    const auto single = rank_envelope_test(first.observed, first.simulated, 0.1);
    const std::vector<EnvelopeInput> one{first};
    const auto combined_one = combine_envelopes(one, 0.1);
    EXPECT_EQ(combined_one.ranks, single.ranks);
    EXPECT_EQ(combined_one.reject, single.reject);
    const std::vector<EnvelopeInput> twice{first, first};
    const auto doubled = combine_envelopes(twice, 0.1);
    EXPECT_EQ(doubled.ranks, single.ranks);
    EXPECT_EQ(doubled.reject, single.reject);
    const std::vector<EnvelopeInput> both{first, second};
    const auto joint = combine_envelopes(both, 0.1);
    EXPECT_EQ(joint.band.lower.n_grid(), 20U);
  }
  const auto a = walks(10, 5, rng);
  const std::vector<EnvelopeInput> uneven{{a[0], {a.begin() + 1, a.end()}},
                                          {a[0], {a.begin() + 2, a.end()}}};
  try {
    combine_envelopes(uneven, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLengthMismatch);
  }
}

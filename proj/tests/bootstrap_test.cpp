#include <cmath>
#include <random>

#include "apfstat/bootstrap.hpp"
#include "apfstat/error.hpp"
#include "gtest/gtest.h"

using apfstat::Error;
using apfstat::ErrorKind;
using namespace apfstat::bootstrap;
using apfstat::apf::Apf;
using apfstat::apf::Window;
using apfstat::geometry::Point2;
using apfstat::persistence::DiagramPoint;
using apfstat::persistence::PersistenceDiagram;

namespace {

std::vector<CurveSample> random_curves(std::size_t count, double shift, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<CurveSample> out(count);
  for (auto& c : out) {
    c.window = {0, 1};
    double v = shift;
    for (int j = 0; j < 21; ++j) c.values.push_back(v += 0.3 * z(rng));
  }
  return out;
}

}  // namespace

TEST(quantile_hat, examples) {
  const std::vector<double> same(17, 2.5);
  EXPECT_EQ(quantile_hat(same, 0.05), 2.5);
  const std::vector<double> four{4, 2, 1, 3};
  EXPECT_EQ(quantile_hat(four, 0.25), 3.0);
  const std::vector<double> two{1, 2};
  EXPECT_EQ(quantile_hat(two, 0.5), 1.0);
  EXPECT_EQ(quantile_hat(two, 0.4), 2.0);
  const std::vector<double> negative{-3, -1};
  EXPECT_EQ(quantile_hat(negative, 0.1), 0.0);
  EXPECT_THROW(quantile_hat(two, 1.0), Error);
  EXPECT_THROW(quantile_hat(std::vector<double>{}, 0.1), Error);
}

TEST(quantile_hat, matches_definition_and_monotone) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> small(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> thetas(1 + trial % 13);
    for (double& t : thetas) t = small(rng);
    double previous = std::numeric_limits<double>::infinity();
    for (double alpha = 0.01; alpha < 1.0; alpha += 0.01) {
      const double q = quantile_hat(thetas, alpha);
      // Smallest candidate in {0} u thetas meeting the exceedance bound.
      double expected = std::numeric_limits<double>::infinity();
      std::vector<double> candidates(thetas);
      candidates.push_back(0.0);
      for (double c : candidates) {
        if (c < 0) continue;
        std::size_t exceed = 0;
        for (double t : thetas) exceed += t > c;
        if (exceed <= alpha * thetas.size() + 1e-9) expected = std::min(expected, c);
      }
      ASSERT_EQ(q, expected);
      ASSERT_LE(q, previous);
      previous = q;
    }
  }
}

TEST(mean_band, identical_curves_collapse) {
  std::mt19937_64 rng(2);
  const std::vector<CurveSample> curves(10, random_curves(1, 0.0, rng)[0]);
  const auto band = mean_band(curves, 0.05, 200, 7);
  EXPECT_EQ(band.q_hat, 0.0);
  for (std::size_t j = 0; j < 21; ++j) {
    EXPECT_NEAR(band.lower.values[j], curves[0].values[j], 1e-12);
    EXPECT_EQ(band.lower.values[j], band.upper.values[j]);
  }
}

TEST(mean_band, symmetric_and_deterministic) {
  std::mt19937_64 rng(3);
  const auto curves = random_curves(30, 0.0, rng);
  const auto band = mean_band(curves, 0.05, 300, 11);
  EXPECT_GT(band.q_hat, 0.0);
  EXPECT_NEAR(band.half_width, band.q_hat / std::sqrt(30.0), 1e-15);
  for (std::size_t j = 0; j < 21; ++j) {
    EXPECT_NEAR(band.mean.values[j] - band.lower.values[j], band.half_width, 1e-14);
    EXPECT_NEAR(band.upper.values[j] - band.mean.values[j], band.half_width, 1e-14);
    EXPECT_NEAR(band.mean.values[j] - band.lower.values[j],
                band.upper.values[j] - band.mean.values[j], 1e-14);
  }
  for (std::size_t threads : {2, 3, 8}) {
    const auto again = mean_band(curves, 0.05, 300, 11, threads);
    EXPECT_EQ(again.thetas, band.thetas);
    EXPECT_EQ(again.upper.values, band.upper.values);
  }
  EXPECT_LE(mean_band(curves, 0.2, 300, 11).q_hat, band.q_hat);
  EXPECT_THROW(mean_band(std::span(curves).first(1), 0.05, 10, 1), Error);
}

TEST(two_sample, identical_groups) {
  std::mt19937_64 rng(4);
  const auto curves = random_curves(15, 0.0, rng);
  for (auto stat : {Statistic::kKs, Statistic::kL1}) {
    const auto result = two_sample(curves, curves, stat, 0.05, 200, 5);
    EXPECT_EQ(result.statistic, 0.0);
    EXPECT_FALSE(result.reject);
    EXPECT_GE(result.p_hat, 0.0);
    EXPECT_LE(result.p_hat, 1.0);
  }
}

TEST(two_sample, symmetric_detects_shift_and_deterministic) {
  std::mt19937_64 rng(5);
  const auto a = random_curves(20, 0.0, rng);
  const auto b = random_curves(25, 1.0, rng);
  for (auto stat : {Statistic::kKs, Statistic::kL1}) {
    const auto ab = two_sample(a, b, stat, 0.05, 400, 9);
    const auto ba = two_sample(b, a, stat, 0.05, 400, 9);
    EXPECT_NEAR(ab.statistic, ba.statistic, 1e-12);
    EXPECT_EQ(ab.reject, ab.statistic > ab.q_hat);
    std::size_t exceed = 0;
    for (double t : ab.thetas) exceed += t > ab.statistic;
    EXPECT_EQ(ab.p_hat, double(exceed) / 400);
    const auto threaded = two_sample(a, b, stat, 0.05, 400, 9, std::nullopt, 8);
    EXPECT_EQ(threaded.thetas, ab.thetas);
  }
  EXPECT_TRUE(two_sample(a, b, Statistic::kKs, 0.05, 400, 9).reject);
  const auto sub = two_sample(a, b, Statistic::kKs, 0.05, 100, 9, Window{0.25, 0.5});
  EXPECT_GT(sub.statistic, 0.0);
}

TEST(two_sample, errors) {
  std::mt19937_64 rng(6);
  const auto a = random_curves(5, 0.0, rng);
  auto b = random_curves(5, 0.0, rng);
  try {
    two_sample(a, b, Statistic::kKs, 0.05, 10, 1, Window{0.5, 2.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kWindowOutOfRange);
  }
  try {
    two_sample(a, b, Statistic::kKs, 0.05, 10, 1, Window{0.5, 0.51});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kWindowOutOfRange);
  }
  b[3].values.pop_back();
  try {
    two_sample(a, b, Statistic::kKs, 0.05, 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGridMismatch);
  }
}

TEST(pd_confidence_band, examples) {
  PersistenceDiagram d{1, {{1, 3, 1}, {0.2, 0.9, 2}}};
  d.normalize();
  const auto exact = pd_confidence_band(d, 0.0);
  const Apf apf = apfstat::apf::apf_from_diagram(d);
  for (double m = 0; m < 4; m += 0.01) {
    EXPECT_EQ(exact.lower(m), apf(m));
    EXPECT_EQ(exact.upper(m), apf(m));
  }
  PersistenceDiagram one{1, {{1, 3, 1}}};
  const auto band = pd_confidence_band(one, 0.5);
  ASSERT_EQ(band.upper.jumps().size(), 1U);
  EXPECT_EQ(band.upper.jumps()[0].location, 1.5);
  EXPECT_EQ(band.upper.jumps()[0].size, 3.0);
  ASSERT_EQ(band.lower.jumps().size(), 1U);
  EXPECT_EQ(band.lower.jumps()[0].location, 2.5);
  EXPECT_EQ(band.lower.jumps()[0].size, 1.0);

  PersistenceDiagram noise{1, {{0, 0.8, 1}}};
  const auto empty = pd_confidence_band(noise, 0.5);
  EXPECT_EQ(empty.lower.total(), 0.0);
  EXPECT_EQ(empty.upper.total(), 0.0);
  EXPECT_THROW(pd_confidence_band(noise, -1.0), Error);
}

TEST(pd_confidence_band, contains_every_perturbation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = 0.2 * u(rng);
    PersistenceDiagram d{1, {}};
    for (int i = 0; i < 6; ++i) {
      const double b = 2 * u(rng);
      d.points.push_back({b, b + 2 * c + 1e-3 + u(rng), 1U + i % 2});
    }
    d.normalize();
    const auto band = pd_confidence_band(d, c);
    for (int draw = 0; draw < 20; ++draw) {
      PersistenceDiagram moved{1, {}};
      for (const auto& p : d.points) {
        // Corners half of the time, interior points otherwise.
        auto offset = [&] {
          return draw % 2 ? (u(rng) < 0.5 ? -c : c) : c * (2 * u(rng) - 1);
        };
        const double b = std::max(0.0, p.birth + offset());
        const double dd = p.death + offset();
        moved.points.push_back({b, dd, p.mult});
      }
      moved.normalize();
      const Apf a = apfstat::apf::apf_from_diagram(moved);
      for (double m = 0; m < 4; m += 0.01) {
        ASSERT_LE(band.lower(m), a(m) + 1e-12);
        ASSERT_LE(a(m), band.upper(m) + 1e-12);
      }
    }
  }
}

TEST(bottleneck_radius, constant_diagrams_give_zero) {
  // A collinear cloud has no loops. Resamples only gain loops through the
  // duplicate jitter, so c stays at the jitter scale.
  std::vector<Point2> line;
  for (int i = 0; i < 20; ++i) line.push_back({double(i), 2.0 * i});
  EXPECT_LE(bottleneck_radius(line, 1, 20, 0.05, 3), 1e-8 * std::hypot(19.0, 38.0));
  // Every resample of a single point has the same (empty) diagram.
  const std::vector<Point2> lone{{0.5, 0.5}};
  EXPECT_EQ(bottleneck_radius(lone, 0, 20, 0.05, 3), 0.0);
}

TEST(bottleneck_radius, deterministic_across_threads) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point2> pts(60);
  for (auto& p : pts) p = {u(rng), u(rng)};
  const double c = bottleneck_radius(pts, 0, 30, 0.1, 4);
  EXPECT_GT(c, 0.0);
  EXPECT_EQ(bottleneck_radius(pts, 0, 30, 0.1, 4, 4), c);
}

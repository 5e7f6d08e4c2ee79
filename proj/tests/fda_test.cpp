#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "apfstat/error.hpp"
#include "apfstat/fda.hpp"
#include "gtest/gtest.h"

using apfstat::Error;
using apfstat::ErrorKind;
using namespace apfstat::fda;
using apfstat::apf::Window;

namespace {

CurveSample constant(double c, std::size_t n = 11) {
  return {Window{0, 1}, std::vector<double>(n, c)};
}

std::vector<CurveSample> constants(std::initializer_list<double> values) {
  std::vector<CurveSample> out;
  for (double v : values) out.push_back(constant(v));
  return out;
}

std::vector<CurveSample> random_curves(std::size_t count, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<CurveSample> out(count);
  for (auto& c : out) {
    c.window = {0, 2};
    double v = 0.0;
    for (int j = 0; j < 25; ++j) c.values.push_back(v += z(rng));
  }
  return out;
}

}  // namespace

TEST(mbd, examples) {
  auto d = mbd(std::vector<CurveSample>(4, constant(3)));
  for (double v : d) EXPECT_DOUBLE_EQ(v, 1.0);
  d = mbd(constants({1, 2, 3}));
  EXPECT_NEAR(d[0], 2.0 / 3, 1e-15);
  EXPECT_NEAR(d[1], 1.0, 1e-15);
  EXPECT_NEAR(d[2], 2.0 / 3, 1e-15);
  d = mbd(constants({1, 2, 3, 4}));
  EXPECT_NEAR(d[0], 0.5, 1e-15);
  EXPECT_NEAR(d[1], 5.0 / 6, 1e-15);
  EXPECT_NEAR(d[2], 5.0 / 6, 1e-15);
  EXPECT_NEAR(d[3], 0.5, 1e-15);
}

TEST(mbd, brute_force_and_permutation) {
  std::mt19937_64 rng(1);
  const auto curves = random_curves(12, rng);
  const auto depth = mbd(curves);
  const std::size_t r = curves.size();
  for (std::size_t h = 0; h < r; ++h) {
    double total = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        std::size_t inside = 0;
        for (std::size_t t = 0; t < 25; ++t) {
          const double lo = std::min(curves[i].values[t], curves[j].values[t]);
          const double hi = std::max(curves[i].values[t], curves[j].values[t]);
          if (lo <= curves[h].values[t] && curves[h].values[t] <= hi) ++inside;
        }
        total += inside / 25.0 * 2.0;
      }
    }
    const double expected = total * 2.0 / (r * (r - 1.0));
    EXPECT_NEAR(depth[h], expected, 1e-12);
    EXPECT_GE(depth[h], 0.0);
    EXPECT_LE(depth[h], 2.0);
  }
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0U);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<CurveSample> shuffled;
  for (std::size_t p : perm) shuffled.push_back(curves[p]);
  const auto depth_shuffled = mbd(shuffled);
  for (std::size_t i = 0; i < r; ++i) EXPECT_NEAR(depth_shuffled[i], depth[perm[i]], 1e-12);
}

TEST(functional_boxplot, examples) {
  auto result = functional_boxplot(std::vector<CurveSample>(5, constant(1)));
  EXPECT_TRUE(result.outlier_indices.empty());
  EXPECT_EQ(result.central_lower.values, result.central_upper.values);

  result = functional_boxplot(constants({1, 2, 3, 4, 5, 100}));
  EXPECT_EQ(result.outlier_indices, (std::vector<std::size_t>{5}));
  // Deepest three are 2, 3, 4: central band [2, 4], fences [-1, 7].
  EXPECT_EQ(result.central_lower.values[0], 2.0);
  EXPECT_EQ(result.central_upper.values[0], 4.0);
  EXPECT_EQ(result.fence_lower.values[0], -1.0);
  EXPECT_EQ(result.fence_upper.values[0], 7.0);
  EXPECT_THROW(functional_boxplot(constants({1, 2, 3})), Error);
}

TEST(functional_boxplot, infinite_inflation_and_containment) {
  std::mt19937_64 rng(2);
  const auto curves = random_curves(30, rng);
  const auto none = functional_boxplot(curves, std::numeric_limits<double>::infinity());
  EXPECT_TRUE(none.outlier_indices.empty());
  const auto result = functional_boxplot(curves);
  for (std::size_t j = 0; j < 25; ++j) {
    EXPECT_LE(result.fence_lower.values[j], result.central_lower.values[j]);
    EXPECT_LE(result.central_lower.values[j], result.central_upper.values[j]);
    EXPECT_LE(result.central_upper.values[j], result.fence_upper.values[j]);
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    bool outside = false;
    for (std::size_t j = 0; j < 25; ++j) {
      outside |= curves[i].values[j] < result.fence_lower.values[j] ||
                 curves[i].values[j] > result.fence_upper.values[j];
    }
    const bool flagged = std::find(result.outlier_indices.begin(),
                                   result.outlier_indices.end(), i) !=
                         result.outlier_indices.end();
    EXPECT_EQ(flagged, outside);
  }
}

TEST(trimmed_mean, examples) {
  const auto three = constants({1, 2, 3});
  EXPECT_DOUBLE_EQ(trimmed_mean(three, 0.0).values[0], 2.0);
  EXPECT_DOUBLE_EQ(trimmed_mean(three, 1.0 / 3).values[0], 1.5);
  const auto one = constants({7});
  EXPECT_EQ(trimmed_mean(one, 0.5).values, one[0].values);
  EXPECT_THROW(trimmed_mean(three, 1.0), Error);
}

TEST(kmeans_curves, examples) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::vector<CurveSample> curves;
  std::vector<std::size_t> truth;
  for (int i = 0; i < 20; ++i) {
    const std::size_t group = i % 2;
    curves.push_back(constant(group * 10.0 + jitter(rng)));
    truth.push_back(group);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto result = kmeans_curves(curves, 2, seed);
    EXPECT_EQ(mislabel_rate(result.labels, truth, 2), 0.0);
    EXPECT_LE(result.iterations, 3U);
  }
  const auto single = kmeans_curves(curves, 1, 0);
  for (auto l : single.labels) EXPECT_EQ(l, 0U);
  try {
    kmeans_curves(curves, 20, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBadK);
  }
  EXPECT_THROW(kmeans_curves(curves, 0, 0), Error);
}

TEST(kmeans_curves, objective_non_increasing) {
  std::mt19937_64 rng(4);
  const auto curves = random_curves(60, rng);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto result = kmeans_curves(curves, 4, seed);
    for (std::size_t i = 1; i < result.objective_trace.size(); ++i) {
      EXPECT_LE(result.objective_trace[i], result.objective_trace[i - 1] * (1 + 1e-12));
    }
    EXPECT_EQ(kmeans_curves(curves, 4, seed).labels, result.labels);
  }
}

TEST(kmeans_curves, restarts_keep_the_best_run) {
  std::mt19937_64 rng(8);
  const auto curves = random_curves(60, rng);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto once = kmeans_curves(curves, 4, seed);
    EXPECT_EQ(kmeans_curves(curves, 4, seed, 100, 1).labels, once.labels);
    const auto many = kmeans_curves(curves, 4, seed, 100, 8);
    EXPECT_LE(many.objective_trace.back(), once.objective_trace.back());
  }
}

TEST(classify, examples) {
  const std::vector<std::vector<CurveSample>> groups{constants({0}), constants({10})};
  EXPECT_EQ(classify(constant(2), groups, 0.0), 0U);
  EXPECT_EQ(classify(constant(10), groups, 0.0), 1U);
  // Equidistant: smaller index wins.
  EXPECT_EQ(classify(constant(5), groups, 0.0), 0U);

  std::mt19937_64 rng(5);
  const std::vector<std::vector<CurveSample>> random_groups{
      random_curves(10, rng), random_curves(10, rng), random_curves(10, rng)};
  const auto centre = trimmed_mean(random_groups[2], 0.2);
  EXPECT_EQ(classify(centre, random_groups, 0.2), 2U);

  for (int q = 0; q < 10; ++q) {
    auto query = random_curves(1, rng)[0];
    const std::size_t before = classify(query, random_groups, 0.2);
    auto shifted = random_groups;
    for (auto& g : shifted) {
      for (auto& c : g) for (double& v : c.values) v += 3.25;
    }
    for (double& v : query.values) v += 3.25;
    EXPECT_EQ(classify(query, shifted, 0.2), before);
  }
}

TEST(mislabel_rate, permutations) {
  const std::vector<std::size_t> truth{0, 0, 1, 1, 2, 2};
  const std::vector<std::size_t> labels{2, 2, 0, 0, 1, 0};
  EXPECT_NEAR(mislabel_rate(labels, truth, 3), 1.0 / 6, 1e-15);
  EXPECT_THROW(mislabel_rate(labels, std::vector<std::size_t>{0}, 3), Error);
}

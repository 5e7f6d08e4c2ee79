#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "apfstat/apf.hpp"
#include "apfstat/geometry.hpp"
#include "apfstat/persistence.hpp"

namespace apfstat::bootstrap {

using apf::CurveSample;

// inf{ q >= 0 : #{theta_i > q} / B <= alpha }.
double quantile_hat(std::span<const double> thetas, double alpha);

struct BandResult {
  CurveSample mean;
  double q_hat = 0.0;
  double half_width = 0.0;  // q_hat / sqrt(r)
  CurveSample lower;
  CurveSample upper;
  std::vector<double> thetas;
};

// Empirical-bootstrap confidence band for the mean curve: B resamples with
// replacement, theta* = sup sqrt(r) |mean - resampled mean|, constant-width
// band mean +- q_hat / sqrt(r).
BandResult mean_band(std::span<const CurveSample> curves, double alpha,
                     std::size_t resamples, std::uint64_t seed,
                     std::size_t threads = 1);

enum class Statistic { kKs, kL1 };

struct TwoSampleResult {
  double statistic = 0.0;
  double q_hat = 0.0;
  double p_hat = 1.0;
  bool reject = false;
  std::vector<double> thetas;
};

// Bootstrap two-sample test on the mean curves restricted to `interval`
// (the whole window when absent). KS = sqrt(r1 r2 / r) sup |mean_a - mean_b|;
// L1 = integral of |mean_a - mean_b| without the sqrt(r1 r2 / r) factor,
// while both bootstrap replicates carry that factor. Resampling pools all r
// curves and hands the first r1 draws to group A.
TwoSampleResult two_sample(std::span<const CurveSample> group_a,
                           std::span<const CurveSample> group_b,
                           Statistic statistic, double alpha,
                           std::size_t resamples, std::uint64_t seed,
                           std::optional<apf::Window> interval = std::nullopt,
                           std::size_t threads = 1);

struct ApfBand {
  apf::Apf lower;
  apf::Apf upper;
};

// APF band implied by a bottleneck ball of radius c around a diagram.
// Points with lifetime <= 2c are treated as noise and left out. Every other
// point may move anywhere in the square of half-side c around it (keeping
// birth >= 0): the upper bound books its largest possible lifetime at its
// smallest possible meanage, the lower bound its smallest lifetime at its
// largest meanage.
ApfBand pd_confidence_band(const persistence::PersistenceDiagram& diagram,
                           double c);

// Bootstrap estimate of the bottleneck radius: quantile_hat over B values of
// the bottleneck distance between the diagram of `points` and that of a
// resample drawn with replacement. Repeated draws are jittered by
// 1e-9 times the bounding-box diagonal so the resample stays simple.
double bottleneck_radius(std::span<const geometry::Point2> points, int k,
                         std::size_t resamples, double alpha,
                         std::uint64_t seed, std::size_t threads = 1);

}  // namespace apfstat::bootstrap

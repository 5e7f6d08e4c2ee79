#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "apfstat/apf.hpp"

namespace apfstat::fda {

using apf::CurveSample;

// Modified band depth of every curve with respect to the whole sample. The
// measure of the set where a curve lies inside a pair's band is estimated as
// (grid points inside) / n_grid * window length, so identical curves all get
// depth equal to the window length.
std::vector<double> mbd(std::span<const CurveSample> curves);

// Indices sorted by decreasing depth, ties by increasing index.
std::vector<std::size_t> depth_order(std::span<const double> depths);

struct BoxplotResult {
  std::vector<double> depths;
  std::size_t central_index = 0;
  CurveSample central_lower;
  CurveSample central_upper;
  CurveSample fence_lower;
  CurveSample fence_upper;
  std::vector<std::size_t> outlier_indices;
};

// Functional boxplot: the central envelope spans the ceil(r/2) deepest
// curves, fences sit `inflation` times its pointwise range beyond it, and a
// curve crossing a fence at any grid point is an outlier.
BoxplotResult functional_boxplot(std::span<const CurveSample> curves,
                                 double inflation = 1.5);

// Pointwise mean of the ceil((1 - alpha) r) deepest curves.
CurveSample trimmed_mean(std::span<const CurveSample> curves, double alpha);

struct KMeansResult {
  std::vector<std::size_t> labels;
  std::vector<CurveSample> centres;
  std::size_t iterations = 0;
  // Sum of squared L2 distances to the assigned centre, one entry per
  // assignment step.
  std::vector<double> objective_trace;
};

// Lloyd's algorithm with the trapezoid L2 distance. Initial centres are K
// distinct curves drawn uniformly with `seed`; an emptied cluster is
// re-seeded with the curve farthest from its centre. With restarts > 1 the
// run is repeated from fresh initial centres and the one with the smallest
// final objective is kept. Throws Error(kBadK) unless 1 <= K < r.
KMeansResult kmeans_curves(std::span<const CurveSample> curves, std::size_t k,
                           std::uint64_t seed, std::size_t max_iter = 100,
                           std::size_t restarts = 1);

// Index of the group whose alpha-trimmed mean is nearest in L2; ties go to
// the smaller index.
std::size_t classify(const CurveSample& curve,
                     std::span<const std::vector<CurveSample>> groups,
                     double alpha);

// Best agreement between cluster labels and true labels over all label
// permutations (K <= 8), returned as the fraction mislabelled.
double mislabel_rate(std::span<const std::size_t> labels,
                     std::span<const std::size_t> truth, std::size_t k);

}  // namespace apfstat::fda

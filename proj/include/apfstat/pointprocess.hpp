#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "apfstat/geometry.hpp"

namespace apfstat::pointprocess {

using geometry::Point2;

struct Window {
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;

  double area() const { return (x1 - x0) * (y1 - y0); }
  bool contains(const Point2& p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  // Throws Error(kInvalidArgument) unless the area is positive and finite.
  void validate() const;
};

struct CircleSpec {
  Point2 center;
  double radius = 1.0;
};

// n points on the circles, each circle chosen with probability proportional
// to its circumference, at a uniform angle, plus bivariate normal noise of
// standard deviation sigma truncated to [-10 sigma, 10 sigma]^2.
std::vector<Point2> sample_on_circles(std::size_t n,
                                      std::span<const CircleSpec> circles,
                                      double sigma, std::uint64_t seed);

// Homogeneous Poisson process with rho points per unit area.
std::vector<Point2> poisson(double rho, const Window& window,
                            std::uint64_t seed);

// Matérn cluster process: Poisson(kappa) parents per unit area on the window
// dilated by R, Poisson(mu) offspring uniform in the radius-R disc of each
// parent, offspring outside the window dropped.
std::vector<Point2> matern_cluster(double kappa, double radius, double mu,
                                   const Window& window, std::uint64_t seed);

inline constexpr double kDefaultClusterKappa = 20.0;
inline constexpr double kDefaultClusterRadius = 0.05;

// Baddeley-Silverman cell process on square cells of side `cell` anchored at
// the window's lower-left corner: each cell holds 0, 1 or 10 uniform points
// with probabilities 1/10, 8/9, 1/90. Boundary cells are clipped to the
// window. cell = 1/sqrt(rho) gives intensity rho.
std::vector<Point2> baddeley_silverman(const Window& window, std::uint64_t seed,
                                       double cell = 1.0);

// Matérn type II hard-core process: Poisson(beta) proposals with uniform
// marks, kept when no proposal with a smaller mark lies within h. Proposals
// come from the window dilated by h so that the process is stationary.
std::vector<Point2> matern_hardcore(double beta, double h, const Window& window,
                                    std::uint64_t seed);

}  // namespace apfstat::pointprocess

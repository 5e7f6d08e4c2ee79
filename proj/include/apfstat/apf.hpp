#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "apfstat/persistence.hpp"

namespace apfstat::apf {

struct RrpdPoint {
  double meanage = 0.0;   // (birth + death) / 2
  double lifetime = 0.0;  // death - birth
  std::uint32_t mult = 1;

  friend bool operator==(const RrpdPoint&, const RrpdPoint&) = default;
};

// Rotated and rescaled persistence diagram.
struct Rrpd {
  std::vector<RrpdPoint> points;
};

Rrpd to_rrpd(const persistence::PersistenceDiagram& diagram);
persistence::PersistenceDiagram from_rrpd(const Rrpd& rrpd, int dim);

struct Jump {
  double location = 0.0;
  double size = 0.0;
};

// Accumulated persistence function: a right-continuous nondecreasing step
// function, zero left of the first jump.
class Apf {
 public:
  Apf() = default;
  // Jumps may come in any order; equal locations are merged.
  explicit Apf(std::vector<Jump> jumps);

  double operator()(double m) const;
  const std::vector<Jump>& jumps() const { return jumps_; }
  double total() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

 private:
  std::vector<Jump> jumps_;
  std::vector<double> cumulative_;
};

// Jump of size mult * lifetime at every meanage. With an allocated time T,
// features with meanage + lifetime / 2 > T (dying after T) are dropped first.
Apf apf_from_rrpd(const Rrpd& rrpd,
                  std::optional<double> allocated_time = std::nullopt);
Apf apf_from_diagram(const persistence::PersistenceDiagram& diagram,
                     std::optional<double> allocated_time = std::nullopt);

inline double apf_eval(const Apf& apf, double m) { return apf(m); }

struct Window {
  double lo = 0.0;
  double hi = 1.0;

  friend bool operator==(const Window&, const Window&) = default;
};

inline constexpr std::size_t kDefaultGridSize = 2500;

// A function sampled at n equidistant points of a window, first point at
// window.lo and last at window.hi.
struct CurveSample {
  Window window;
  std::vector<double> values;

  std::size_t n_grid() const { return values.size(); }
  double spacing() const;
  double grid_point(std::size_t i) const;
  bool same_grid(const CurveSample& other) const {
    return window == other.window && n_grid() == other.n_grid();
  }
};

double grid_point(const Window& window, std::size_t n_grid, std::size_t i);

CurveSample discretize(const Apf& apf, Window window,
                       std::size_t n_grid = kDefaultGridSize);

enum class Norm { kSup, kL1, kL2 };

// Sup norm or trapezoid-rule L1/L2 norm of a - b on the shared grid.
// Throws Error(kGridMismatch).
double curve_distance(const CurveSample& a, const CurveSample& b, Norm norm);

// Throws Error(kGridMismatch) unless all curves share window and grid size.
// Also rejects an empty list and grids with fewer than two points.
void require_shared_grid(std::span<const CurveSample> curves);

}  // namespace apfstat::apf

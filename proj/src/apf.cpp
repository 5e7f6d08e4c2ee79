#include "apfstat/apf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "apfstat/error.hpp"

namespace apfstat::apf {

Rrpd to_rrpd(const persistence::PersistenceDiagram& diagram) {
  Rrpd out;
  out.points.reserve(diagram.points.size());
  for (const auto& p : diagram.points) {
    out.points.push_back({(p.birth + p.death) / 2.0, p.death - p.birth, p.mult});
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const RrpdPoint& a, const RrpdPoint& b) {
              return a.meanage < b.meanage ||
                     (a.meanage == b.meanage && a.lifetime < b.lifetime);
            });
  std::vector<RrpdPoint> merged;
  for (const auto& p : out.points) {
    if (!merged.empty() && merged.back().meanage == p.meanage &&
        merged.back().lifetime == p.lifetime) {
      merged.back().mult += p.mult;
    } else {
      merged.push_back(p);
    }
  }
  out.points = std::move(merged);
  return out;
}

persistence::PersistenceDiagram from_rrpd(const Rrpd& rrpd, int dim) {
  persistence::PersistenceDiagram d;
  d.dim = dim;
  for (const auto& p : rrpd.points) {
    d.points.push_back(
        {p.meanage - p.lifetime / 2.0, p.meanage + p.lifetime / 2.0, p.mult});
  }
  d.normalize();
  return d;
}

Apf::Apf(std::vector<Jump> jumps) {
  std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) {
    return a.location < b.location;
  });
  for (const Jump& j : jumps) {
    if (!jumps_.empty() && jumps_.back().location == j.location) {
      jumps_.back().size += j.size;
    } else {
      jumps_.push_back(j);
    }
  }
  cumulative_.reserve(jumps_.size());
  double running = 0.0;
  for (const Jump& j : jumps_) {
    running += j.size;
    cumulative_.push_back(running);
  }
}

double Apf::operator()(double m) const {
  const auto it = std::upper_bound(
      jumps_.begin(), jumps_.end(), m,
      [](double value, const Jump& j) { return value < j.location; });
  if (it == jumps_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

Apf apf_from_rrpd(const Rrpd& rrpd, std::optional<double> allocated_time) {
  if (allocated_time && !(*allocated_time > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "apf: allocated time must be positive");
  }
  std::vector<Jump> jumps;
  jumps.reserve(rrpd.points.size());
  for (const auto& p : rrpd.points) {
    if (allocated_time && p.meanage + p.lifetime / 2.0 > *allocated_time) {
      continue;
    }
    jumps.push_back({p.meanage, static_cast<double>(p.mult) * p.lifetime});
  }
  return Apf(std::move(jumps));
}

Apf apf_from_diagram(const persistence::PersistenceDiagram& diagram,
                     std::optional<double> allocated_time) {
  return apf_from_rrpd(to_rrpd(diagram), allocated_time);
}

double grid_point(const Window& window, std::size_t n_grid, std::size_t i) {
  if (i + 1 == n_grid) return window.hi;
  return window.lo + (window.hi - window.lo) * static_cast<double>(i) /
                         static_cast<double>(n_grid - 1);
}

double CurveSample::spacing() const {
  return (window.hi - window.lo) / static_cast<double>(n_grid() - 1);
}

double CurveSample::grid_point(std::size_t i) const {
  return apf::grid_point(window, n_grid(), i);
}

CurveSample discretize(const Apf& apf, Window window, std::size_t n_grid) {
  if (!(window.lo < window.hi) || n_grid < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "discretize: need lo < hi and at least two grid points");
  }
  CurveSample out;
  out.window = window;
  out.values.resize(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    out.values[i] = apf(grid_point(window, n_grid, i));
  }
  return out;
}

double curve_distance(const CurveSample& a, const CurveSample& b, Norm norm) {
  if (!a.same_grid(b) || a.n_grid() < 2) {
    throw Error(ErrorKind::kGridMismatch,
                "curve_distance: curves are not on the same grid");
  }
  const std::size_t n = a.n_grid();
  if (norm == Norm::kSup) {
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sup = std::max(sup, std::abs(a.values[i] - b.values[i]));
    }
    return sup;
  }
  const bool squared = norm == Norm::kL2;
  auto term = [&](std::size_t i) {
    const double d = std::abs(a.values[i] - b.values[i]);
    return squared ? d * d : d;
  };
  double sum = (term(0) + term(n - 1)) / 2.0;
  for (std::size_t i = 1; i + 1 < n; ++i) sum += term(i);
  const double integral = sum * a.spacing();
  return squared ? std::sqrt(integral) : integral;
}

void require_shared_grid(std::span<const CurveSample> curves) {
  if (curves.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "empty curve sample");
  }
  if (curves.front().n_grid() < 2) {
    throw Error(ErrorKind::kGridMismatch, "grid needs at least two points");
  }
  for (std::size_t i = 1; i < curves.size(); ++i) {
    if (!curves[i].same_grid(curves.front())) {
      throw Error(ErrorKind::kGridMismatch,
                  "curve " + std::to_string(i) +
                      " is not on the grid of the first curve");
    }
  }
}

}  // namespace apfstat::apf

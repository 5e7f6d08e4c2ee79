#include "apfstat/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "apfstat/error.hpp"

namespace apfstat::pointprocess {
namespace {

using Rng = std::mt19937_64;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(what) + " must be positive and finite");
  }
}

std::size_t poisson_count(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  return static_cast<std::size_t>(std::poisson_distribution<long long>(mean)(rng));
}

// Uniform points in [x0,x1]x[y0,y1], appended.
void scatter(Rng& rng, std::size_t count, double x0, double x1, double y0,
             double y1, std::vector<Point2>& out) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = unit(rng);
    const double v = unit(rng);
    out.push_back({x0 + u * (x1 - x0), y0 + v * (y1 - y0)});
  }
}

double truncated_normal(Rng& rng, double sigma) {
  std::normal_distribution<double> normal(0.0, sigma);
  for (;;) {
    const double z = normal(rng);
    if (std::abs(z) <= 10.0 * sigma) return z;
  }
}

}  // namespace

void Window::validate() const {
  if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) ||
      !std::isfinite(y1) || !(x1 > x0) || !(y1 > y0)) {
    throw Error(ErrorKind::kInvalidArgument, "window must have positive area");
  }
}

std::vector<Point2> sample_on_circles(std::size_t n,
                                      std::span<const CircleSpec> circles,
                                      double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::kInvalidArgument,
                "sample_on_circles: sigma must be non-negative");
  }
  if (n > 0 && circles.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "sample_on_circles: no circles");
  }
  std::vector<double> weights;
  for (const auto& c : circles) {
    require_positive(c.radius, "sample_on_circles: radius");
    weights.push_back(c.radius);
  }
  std::vector<Point2> out;
  if (n == 0) return out;
  out.reserve(n);
  Rng rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) {
    const CircleSpec& c = circles[pick(rng)];
    const double t = angle(rng);
    Point2 p{c.center.x + c.radius * std::cos(t),
             c.center.y + c.radius * std::sin(t)};
    if (sigma > 0.0) {
      p.x += truncated_normal(rng, sigma);
      p.y += truncated_normal(rng, sigma);
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Point2> poisson(double rho, const Window& window,
                            std::uint64_t seed) {
  require_positive(rho, "poisson: rho");
  window.validate();
  Rng rng(seed);
  std::vector<Point2> out;
  scatter(rng, poisson_count(rng, rho * window.area()), window.x0, window.x1,
          window.y0, window.y1, out);
  return out;
}

std::vector<Point2> matern_cluster(double kappa, double radius, double mu,
                                   const Window& window, std::uint64_t seed) {
  require_positive(kappa, "matern_cluster: kappa");
  require_positive(radius, "matern_cluster: R");
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorKind::kInvalidArgument,
                "matern_cluster: mu must be non-negative");
  }
  window.validate();
  Rng rng(seed);
  const Window grown{window.x0 - radius, window.x1 + radius,
                     window.y0 - radius, window.y1 + radius};
  std::vector<Point2> parents;
  scatter(rng, poisson_count(rng, kappa * grown.area()), grown.x0, grown.x1,
          grown.y0, grown.y1, parents);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point2> out;
  for (const auto& parent : parents) {
    const std::size_t count = poisson_count(rng, mu);
    for (std::size_t i = 0; i < count; ++i) {
      const double rad = radius * std::sqrt(unit(rng));
      const double t = 2.0 * std::numbers::pi * unit(rng);
      const Point2 p{parent.x + rad * std::cos(t), parent.y + rad * std::sin(t)};
      if (window.contains(p)) out.push_back(p);
    }
  }
  return out;
}

std::vector<Point2> baddeley_silverman(const Window& window, std::uint64_t seed,
                                       double cell) {
  require_positive(cell, "baddeley_silverman: cell");
  std::vector<Point2> out;
  if (!(window.x1 > window.x0) || !(window.y1 > window.y0)) return out;
  window.validate();
  Rng rng(seed);
  std::discrete_distribution<int> law({1.0 / 10.0, 8.0 / 9.0, 1.0 / 90.0});
  constexpr std::size_t kCounts[] = {0, 1, 10};
  const auto nx = static_cast<std::size_t>(
      std::ceil((window.x1 - window.x0) / cell - 1e-9));
  const auto ny = static_cast<std::size_t>(
      std::ceil((window.y1 - window.y0) / cell - 1e-9));
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double x0 = window.x0 + static_cast<double>(i) * cell;
      const double y0 = window.y0 + static_cast<double>(j) * cell;
      const double x1 = std::min(x0 + cell, window.x1);
      const double y1 = std::min(y0 + cell, window.y1);
      scatter(rng, kCounts[law(rng)], x0, x1, y0, y1, out);
    }
  }
  return out;
}

std::vector<Point2> matern_hardcore(double beta, double h, const Window& window,
                                    std::uint64_t seed) {
  require_positive(beta, "matern_hardcore: beta");
  require_positive(h, "matern_hardcore: h");
  window.validate();
  Rng rng(seed);
  const Window grown{window.x0 - h, window.x1 + h, window.y0 - h, window.y1 + h};
  std::vector<Point2> proposals;
  scatter(rng, poisson_count(rng, beta * grown.area()), grown.x0, grown.x1,
          grown.y0, grown.y1, proposals);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> marks(proposals.size());
  for (double& m : marks) m = unit(rng);

  // Bucket proposals into cells of side >= h so that every neighbour within h
  // lies in an adjacent cell; the side grows with sparse proposals.
  const double side = std::max(
      h, std::sqrt(grown.area() / static_cast<double>(std::max<std::size_t>(proposals.size(), 1))));
  const auto nx = static_cast<std::size_t>(std::ceil((grown.x1 - grown.x0) / side)) + 1;
  const auto ny = static_cast<std::size_t>(std::ceil((grown.y1 - grown.y0) / side)) + 1;
  auto cell_of = [&](const Point2& p) {
    const auto cx = std::min(nx - 1, static_cast<std::size_t>((p.x - grown.x0) / side));
    const auto cy = std::min(ny - 1, static_cast<std::size_t>((p.y - grown.y0) / side));
    return std::pair{cx, cy};
  };
  std::vector<std::vector<std::size_t>> buckets(nx * ny);
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    const auto [cx, cy] = cell_of(proposals[i]);
    buckets[cy * nx + cx].push_back(i);
  }

  std::vector<Point2> out;
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    const Point2& p = proposals[i];
    if (!window.contains(p)) continue;
    const auto [cx, cy] = cell_of(p);
    bool kept = true;
    for (std::size_t y = cy == 0 ? 0 : cy - 1; kept && y <= std::min(ny - 1, cy + 1); ++y) {
      for (std::size_t x = cx == 0 ? 0 : cx - 1; kept && x <= std::min(nx - 1, cx + 1); ++x) {
        for (std::size_t j : buckets[y * nx + x]) {
          if (j == i || marks[j] >= marks[i]) continue;
          if (std::hypot(proposals[j].x - p.x, proposals[j].y - p.y) < h) {
            kept = false;
            break;
          }
        }
      }
    }
    if (kept) out.push_back(p);
  }
  return out;
}

}  // namespace apfstat::pointprocess

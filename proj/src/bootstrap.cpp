#include "apfstat/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "apfstat/error.hpp"
#include "apfstat/parallel.hpp"

namespace apfstat::bootstrap {
namespace {

void check_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(who) + ": alpha must lie in (0, 1)");
  }
}

// Grid index range [first, last] covered by the interval.
std::pair<std::size_t, std::size_t> interval_indices(const CurveSample& curve,
                                                     const apf::Window& interval) {
  const apf::Window& w = curve.window;
  const double slack = 1e-9 * (w.hi - w.lo);
  if (!(interval.lo < interval.hi) || interval.lo < w.lo - slack ||
      interval.hi > w.hi + slack) {
    throw Error(ErrorKind::kWindowOutOfRange,
                "two_sample: interval must be a non-empty part of the curve "
                "window");
  }
  const std::size_t n = curve.n_grid();
  std::size_t first = n;
  std::size_t last = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = curve.grid_point(i);
    if (m >= interval.lo - slack && m <= interval.hi + slack) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first == n || last <= first) {
    throw Error(ErrorKind::kWindowOutOfRange,
                "two_sample: interval covers fewer than two grid points");
  }
  return {first, last};
}

}  // namespace

double quantile_hat(std::span<const double> thetas, double alpha) {
  check_alpha(alpha, "quantile_hat");
  if (thetas.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "quantile_hat: no values");
  }
  std::vector<double> sorted(thetas.begin(), thetas.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t b = sorted.size();
  // At most `allowed` values may exceed q.
  const auto allowed = static_cast<std::size_t>(
      std::floor(alpha * static_cast<double>(b) + 1e-9));
  if (allowed >= b) return 0.0;
  return std::max(0.0, sorted[b - allowed - 1]);
}

BandResult mean_band(std::span<const CurveSample> curves, double alpha,
                     std::size_t resamples, std::uint64_t seed,
                     std::size_t threads) {
  check_alpha(alpha, "mean_band");
  if (curves.size() < 2 || resamples < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "mean_band: need r >= 2 curves and B >= 1");
  }
  apf::require_shared_grid(curves);
  const std::size_t r = curves.size();
  const std::size_t n = curves.front().n_grid();

  BandResult out;
  out.mean.window = curves.front().window;
  out.mean.values.assign(n, 0.0);
  for (const auto& c : curves) {
    for (std::size_t j = 0; j < n; ++j) out.mean.values[j] += c.values[j];
  }
  for (double& v : out.mean.values) v /= static_cast<double>(r);

  const double root_r = std::sqrt(static_cast<double>(r));
  out.thetas.assign(resamples, 0.0);
  parallel_for(resamples, threads, [&](std::size_t b) {
    std::mt19937_64 rng(derive_seed(seed, b));
    std::uniform_int_distribution<std::size_t> draw(0, r - 1);
    std::vector<double> resampled(n, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      const auto& c = curves[draw(rng)];
      for (std::size_t j = 0; j < n; ++j) resampled[j] += c.values[j];
    }
    double sup = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sup = std::max(sup, std::abs(out.mean.values[j] -
                                   resampled[j] / static_cast<double>(r)));
    }
    out.thetas[b] = root_r * sup;
  });

  out.q_hat = quantile_hat(out.thetas, alpha);
  out.half_width = out.q_hat / root_r;
  out.lower = out.mean;
  out.upper = out.mean;
  for (std::size_t j = 0; j < n; ++j) {
    out.lower.values[j] -= out.half_width;
    out.upper.values[j] += out.half_width;
  }
  return out;
}

TwoSampleResult two_sample(std::span<const CurveSample> group_a,
                           std::span<const CurveSample> group_b,
                           Statistic statistic, double alpha,
                           std::size_t resamples, std::uint64_t seed,
                           std::optional<apf::Window> interval,
                           std::size_t threads) {
  check_alpha(alpha, "two_sample");
  const std::size_t r1 = group_a.size();
  const std::size_t r2 = group_b.size();
  if (r1 < 2 || r2 < 2 || resamples < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "two_sample: need at least two curves per group and B >= 1");
  }
  std::vector<const CurveSample*> pooled;
  pooled.reserve(r1 + r2);
  for (const auto& c : group_a) pooled.push_back(&c);
  for (const auto& c : group_b) pooled.push_back(&c);
  for (const auto* c : pooled) {
    if (!c->same_grid(*pooled.front()) || c->n_grid() < 2) {
      throw Error(ErrorKind::kGridMismatch,
                  "two_sample: curves are not on a shared grid");
    }
  }
  const CurveSample& reference = *pooled.front();
  const auto [first, last] =
      interval_indices(reference, interval.value_or(reference.window));
  const double h = reference.spacing();
  const std::size_t r = r1 + r2;
  const double scale = std::sqrt(static_cast<double>(r1) *
                                 static_cast<double>(r2) /
                                 static_cast<double>(r));

  // Discrepancy between the means of two index sets on the interval.
  auto discrepancy = [&](auto index_of_a, auto index_of_b) {
    double sup = 0.0;
    double integral = 0.0;
    for (std::size_t j = first; j <= last; ++j) {
      double mean_a = 0.0;
      double mean_b = 0.0;
      for (std::size_t i = 0; i < r1; ++i) mean_a += pooled[index_of_a(i)]->values[j];
      for (std::size_t i = 0; i < r2; ++i) mean_b += pooled[index_of_b(i)]->values[j];
      const double d = std::abs(mean_a / static_cast<double>(r1) -
                                mean_b / static_cast<double>(r2));
      sup = std::max(sup, d);
      integral += (j == first || j == last) ? d / 2.0 : d;
    }
    integral *= h;
    return statistic == Statistic::kKs ? sup : integral;
  };

  TwoSampleResult out;
  const double observed = discrepancy([](std::size_t i) { return i; },
                                      [r1](std::size_t i) { return r1 + i; });
  out.statistic = statistic == Statistic::kKs ? scale * observed : observed;

  out.thetas.assign(resamples, 0.0);
  parallel_for(resamples, threads, [&](std::size_t b) {
    std::mt19937_64 rng(derive_seed(seed, b));
    std::uniform_int_distribution<std::size_t> draw(0, r - 1);
    std::vector<std::size_t> picks(r);
    for (auto& p : picks) p = draw(rng);
    out.thetas[b] =
        scale * discrepancy([&](std::size_t i) { return picks[i]; },
                            [&](std::size_t i) { return picks[r1 + i]; });
  });

  out.q_hat = quantile_hat(out.thetas, alpha);
  std::size_t exceed = 0;
  for (double t : out.thetas) exceed += t > out.statistic ? 1 : 0;
  out.p_hat = static_cast<double>(exceed) / static_cast<double>(resamples);
  out.reject = out.statistic > out.q_hat;
  return out;
}

ApfBand pd_confidence_band(const persistence::PersistenceDiagram& diagram,
                           double c) {
  if (!(c >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "pd_confidence_band: radius must be non-negative");
  }
  std::vector<apf::Jump> lower;
  std::vector<apf::Jump> upper;
  for (const auto& p : diagram.points) {
    const double lifetime = p.death - p.birth;
    if (!(lifetime > 2.0 * c)) continue;
    const double mult = static_cast<double>(p.mult);
    const double earliest_birth = std::max(p.birth - c, 0.0);
    upper.push_back({(earliest_birth + p.death - c) / 2.0,
                     (p.death + c - earliest_birth) * mult});
    lower.push_back({(p.birth + p.death) / 2.0 + c, (lifetime - 2.0 * c) * mult});
  }
  return {apf::Apf(std::move(lower)), apf::Apf(std::move(upper))};
}

double bottleneck_radius(std::span<const geometry::Point2> points, int k,
                         std::size_t resamples, double alpha,
                         std::uint64_t seed, std::size_t threads) {
  check_alpha(alpha, "bottleneck_radius");
  if (resamples < 1 || points.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "bottleneck_radius: need points and B >= 1");
  }
  const auto reference = persistence::ph_pointcloud(
      geometry::alpha_filtration(points), k);

  double min_x = points.front().x, max_x = min_x;
  double min_y = points.front().y, max_y = min_y;
  for (const auto& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double jitter = 1e-9 * std::hypot(max_x - min_x, max_y - min_y);
  const std::size_t n = points.size();

  std::vector<double> thetas(resamples, 0.0);
  parallel_for(resamples, threads, [&](std::size_t b) {
    std::mt19937_64 rng(derive_seed(seed, b));
    std::uniform_int_distribution<std::size_t> draw(0, n - 1);
    std::uniform_real_distribution<double> shake(-1.0, 1.0);
    std::vector<std::uint32_t> times_drawn(n, 0);
    std::vector<geometry::Point2> sample;
    sample.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t idx = draw(rng);
      geometry::Point2 p = points[idx];
      if (times_drawn[idx]++ > 0) {
        p.x += jitter * shake(rng);
        p.y += jitter * shake(rng);
      }
      sample.push_back(p);
    }
    const auto resampled =
        persistence::ph_pointcloud(geometry::alpha_filtration(sample), k);
    thetas[b] = persistence::bottleneck(reference, resampled);
  });
  return quantile_hat(thetas, alpha);
}

}  // namespace apfstat::bootstrap

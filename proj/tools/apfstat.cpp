// Command-line front end: parses flags into a RunConfig and maps errors to
// exit codes (0 ok, 1 usage, 2 data, 3 numeric) with a JSON report on stderr.
#include <charconv>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apfstat/cli.hpp"

using apfstat::Error;
using apfstat::ErrorKind;
using apfstat::cli::RunConfig;

namespace {

std::vector<double> split_numbers(const std::string& text, std::size_t expected,
                                  const char* what) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const auto end = text.find(':', start);
    const std::string part = text.substr(start, end - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(what) + ": cannot parse \"" + text + "\"");
    }
    out.push_back(value);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (out.size() != expected) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(what) + ": expected " + std::to_string(expected) +
                    " colon-separated numbers, got \"" + text + "\"");
  }
  return out;
}

apfstat::apf::Window parse_window(const std::string& text, const char* what) {
  const auto v = split_numbers(text, 2, what);
  if (!(v[0] < v[1])) {
    throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": need T1 < T2");
  }
  return {v[0], v[1]};
}

void report(const Error& error) {
  std::cerr << apfstat::cli::error_to_json(error).dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent homology, accumulated persistence functions and "
               "functional statistics for planar point patterns"};
  app.require_subcommand(1);

  RunConfig config;
  std::string window, interval, region, statistic = "ks";
  std::vector<std::string> circles;
  double allocated_time = 0.0, rho = 0.0, mu = 0.0, cell = 0.0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", config.output, "Output path prefix")->required();
    sub->add_option("--seed", config.seed, "Random seed");
    sub->add_option("--threads", config.threads, "Worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
  };
  auto inputs = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("inputs", config.inputs,
                                "Points CSV, height graph, diagram JSON or curve CSV files");
    if (required) opt->required();
  };
  auto curve_options = [&](CLI::App* sub) {
    sub->add_option("--k", config.k, "Homology dimension")->check(CLI::Range(0, 1));
    sub->add_option("--window", window, "APF window T1:T2 (default 0:1)");
    sub->add_option("--grid", config.n_grid, "Grid points on the window")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    sub->add_option("--allocated-time", allocated_time,
                    "Drop features dying after this time");
    sub->add_flag("--seeded-ties", config.seeded_ties,
                  "Break elder-rule ties with a seeded coin instead of by index");
  };
  auto model_options = [&](CLI::App* sub) {
    sub->add_option("--model", config.model,
                    "poisson | matern-cluster | baddeley-silverman | matern-hardcore | circles");
    sub->add_option("--region", region, "Observation window x0:x1:y0:y1 (default 0:1:0:1)");
    sub->add_option("--rho", rho, "Intensity (points per unit area)");
    sub->add_option("--kappa", config.kappa, "Matérn cluster parent intensity");
    sub->add_option("--radius", config.radius, "Matérn cluster radius");
    sub->add_option("--mu", mu, "Mean offspring per parent (default rho/kappa)");
    sub->add_option("--beta", config.beta, "Matérn hard-core proposal intensity");
    sub->add_option("--hardcore", config.hardcore, "Hard-core distance");
    sub->add_option("--cell", cell, "Baddeley-Silverman cell side (default 1/sqrt(rho))");
    sub->add_option("--count", config.count, "Points on circles");
    sub->add_option("--sigma", config.sigma, "Noise level for points on circles");
    sub->add_option("--circle", circles, "Circle cx:cy:radius (repeatable)");
  };

  auto* simulate = app.add_subcommand("simulate", "Simulate a point pattern");
  common(simulate);
  model_options(simulate);

  auto* ph = app.add_subcommand("ph", "Persistence diagrams of points or height graphs");
  common(ph);
  inputs(ph, true);
  curve_options(ph);

  auto* apf = app.add_subcommand("apf", "Accumulated persistence functions on a grid");
  common(apf);
  inputs(apf, true);
  curve_options(apf);

  auto* env = app.add_subcommand("envelope", "Global rank envelope test against a null model");
  common(env);
  inputs(env, true);
  curve_options(env);
  model_options(env);
  env->add_option("--r", config.simulations, "Number of null simulations");
  env->add_option("--alpha", config.alpha, "Level");
  env->add_flag("--combine", config.combine, "Join APF_0 and APF_1 in one test");

  auto* box = app.add_subcommand("boxplot", "Functional boxplot and outliers");
  common(box);
  inputs(box, true);
  curve_options(box);
  box->add_option("--inflation", config.inflation, "Fence factor");

  auto* ci = app.add_subcommand("ci-mean", "Bootstrap confidence band for the mean APF");
  common(ci);
  inputs(ci, true);
  curve_options(ci);
  ci->add_option("--alpha", config.alpha, "Level");
  ci->add_option("--B", config.resamples, "Bootstrap resamples");

  auto* two = app.add_subcommand("two-sample", "Bootstrap two-sample test");
  common(two);
  inputs(two, true);
  curve_options(two);
  two->add_option("--group-b", config.group_b, "Files of the second group")->required();
  two->add_option("--alpha", config.alpha, "Level");
  two->add_option("--B", config.resamples, "Bootstrap resamples");
  two->add_option("--statistic", statistic, "ks | l1")
      ->check(CLI::IsMember({"ks", "l1"}));
  two->add_option("--interval", interval, "Test interval I1:I2 inside the window");

  auto* cluster = app.add_subcommand("cluster", "K-means clustering of APFs");
  common(cluster);
  inputs(cluster, true);
  curve_options(cluster);
  cluster->add_option("--K", config.clusters, "Number of clusters");
  cluster->add_option("--max-iter", config.max_iter, "Iteration cap");
  cluster->add_option("--restarts", config.restarts, "Runs from fresh initial centres; the best is kept")
      ->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "Assign APFs to the nearest trimmed mean");
  common(classify);
  inputs(classify, true);
  curve_options(classify);
  classify->add_option("--group", config.groups, "One file per labelled group (repeatable)")
      ->required();
  classify->add_option("--alpha", config.trim, "Trimming fraction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report(Error(ErrorKind::kInvalidArgument, e.what()));
    return 1;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    auto* sub = app.get_subcommands().front();
    auto given = [sub](const char* name) {
      const CLI::Option* opt = sub->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    if (!window.empty()) config.window = parse_window(window, "--window");
    if (!interval.empty()) config.interval = parse_window(interval, "--interval");
    if (!region.empty()) {
      const auto v = split_numbers(region, 4, "--region");
      config.region = {v[0], v[1], v[2], v[3]};
      config.region.validate();
    }
    for (const auto& c : circles) {
      const auto v = split_numbers(c, 3, "--circle");
      config.circles.push_back({{v[0], v[1]}, v[2]});
    }
    if (given("--allocated-time")) config.allocated_time = allocated_time;
    if (given("--rho")) config.rho = rho;
    if (given("--mu")) config.mu = mu;
    if (given("--cell")) config.cell = cell;
    config.statistic = statistic == "l1" ? apfstat::bootstrap::Statistic::kL1
                                         : apfstat::bootstrap::Statistic::kKs;
    apfstat::cli::run(config);
  } catch (const Error& e) {
    report(e);
    return apfstat::cli::exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    report(Error(ErrorKind::kNumericFailure, "out of memory"));
    return 3;
  } catch (const std::exception& e) {
    report(Error(ErrorKind::kNumericFailure, e.what()));
    return 3;
  }
  return 0;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apfstat/apf.hpp"
#include "apfstat/bootstrap.hpp"
#include "apfstat/error.hpp"
#include "apfstat/io.hpp"
#include "apfstat/pointprocess.hpp"

namespace apfstat::cli {

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> group_b;  // two-sample
  std::vector<std::string> groups;   // classify: one file per group
  std::string output;                // path prefix; extensions are appended

  int k = 0;
  bool combine = false;  // envelope: join APF_0 and APF_1
  bool seeded_ties = false;
  apf::Window window{0.0, 1.0};
  std::size_t n_grid = apf::kDefaultGridSize;
  std::optional<double> allocated_time;

  double alpha = 0.05;
  std::size_t resamples = 1000;  // --B
  std::size_t simulations = 2499;  // --r
  std::uint64_t seed = 1;
  bootstrap::Statistic statistic = bootstrap::Statistic::kKs;
  std::optional<apf::Window> interval;
  std::size_t clusters = 2;  // --K
  std::size_t max_iter = 100;
  std::size_t restarts = 1;
  double inflation = 1.5;
  double trim = 0.2;

  // Point-process parameters.
  std::string model = "poisson";
  pointprocess::Window region;
  std::optional<double> rho;
  double kappa = pointprocess::kDefaultClusterKappa;
  double radius = pointprocess::kDefaultClusterRadius;
  std::optional<double> mu;
  double beta = 200.0;
  double hardcore = 0.03;
  std::optional<double> cell;
  std::size_t count = 100;
  double sigma = 0.0;
  std::vector<pointprocess::CircleSpec> circles;

  // Not part of the replay record: results do not depend on it.
  std::size_t threads = 1;
};

// The settings that determine a command's output, embedded in every
// artifact so a run can be replayed.
io::ordered_json config_to_json(const RunConfig& config);

// Process exit code for an error kind: 1 usage, 2 data, 3 numeric.
int exit_code(ErrorKind kind);
io::ordered_json error_to_json(const Error& error);

// Executes one command and writes its artifacts. Throws Error.
void run(const RunConfig& config);

// Point pattern of the configured model, for simulate and envelope nulls.
std::vector<geometry::Point2> simulate_pattern(const RunConfig& config,
                                               std::uint64_t seed);

}  // namespace apfstat::cli

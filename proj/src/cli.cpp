#include "apfstat/cli.hpp"

#include <algorithm>
#include <cmath>

#include "apfstat/envelope.hpp"
#include "apfstat/fda.hpp"
#include "apfstat/parallel.hpp"
#include "apfstat/plot.hpp"

namespace apfstat::cli {
namespace {

using io::ordered_json;
using apf::CurveSample;
using geometry::Point2;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

ordered_json window_json(const apf::Window& w) { return {w.lo, w.hi}; }

persistence::TieBreak tiebreak(const RunConfig& config) {
  return config.seeded_ties ? persistence::TieBreak::seeded(config.seed)
                            : persistence::TieBreak::deterministic();
}

persistence::PersistenceDiagram points_diagram(const std::vector<Point2>& points,
                                               int k, const RunConfig& config) {
  return persistence::ph_pointcloud(geometry::alpha_filtration(points), k,
                                    tiebreak(config));
}

CurveSample curve_of(const persistence::PersistenceDiagram& diagram,
                     const RunConfig& config) {
  return apf::discretize(apf::apf_from_diagram(diagram, config.allocated_time),
                         config.window, config.n_grid);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

enum class FileKind { kDiagrams, kCurves, kGraph, kPoints };

FileKind classify_file(const std::string& path, const std::string& text) {
  if (ends_with(path, ".json")) return FileKind::kDiagrams;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] != '#') {
      if (line.compare(first, 2, "m,") == 0) return FileKind::kCurves;
      if (line.compare(first, 2, "v ") == 0 || line.compare(first, 2, "e ") == 0) {
        return FileKind::kGraph;
      }
      return FileKind::kPoints;
    }
    start = end + 1;
  }
  return FileKind::kPoints;
}

// Diagrams of every input file (points are run through the alpha complex,
// graphs through the height filtration).
std::vector<persistence::PersistenceDiagram> load_diagrams(
    const std::vector<std::string>& files, const RunConfig& config) {
  std::vector<persistence::PersistenceDiagram> out;
  for (const auto& path : files) {
    const std::string text = io::read_file(path);
    switch (classify_file(path, text)) {
      case FileKind::kDiagrams: {
        ordered_json parsed;
        try {
          parsed = ordered_json::parse(text);
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorKind::kParseError, path + ": " + e.what());
        }
        for (auto& d : io::diagrams_from_json(parsed)) out.push_back(std::move(d));
        break;
      }
      case FileKind::kGraph:
        out.push_back(persistence::ph_sublevel(io::parse_heightgraph_text(text),
                                               tiebreak(config)));
        break;
      case FileKind::kPoints:
        out.push_back(points_diagram(io::parse_points_text(text), config.k, config));
        break;
      case FileKind::kCurves:
        throw Error(ErrorKind::kInvalidArgument,
                    path + ": expected points, a height graph or diagrams, got curves");
    }
  }
  return out;
}

std::vector<CurveSample> load_curves(const std::vector<std::string>& files,
                                     const RunConfig& config) {
  if (files.empty()) {
    throw Error(ErrorKind::kInvalidArgument, config.command + ": no input files");
  }
  std::vector<CurveSample> out;
  for (const auto& path : files) {
    const std::string text = io::read_file(path);
    if (classify_file(path, text) == FileKind::kCurves) {
      for (auto& c : io::curves_from_csv(text)) out.push_back(std::move(c));
    } else {
      for (const auto& d : load_diagrams({path}, config)) out.push_back(curve_of(d, config));
    }
  }
  apf::require_shared_grid(out);
  return out;
}

std::string stamp(const RunConfig& config) { return config_to_json(config).dump(); }

void write_json(const RunConfig& config, ordered_json body) {
  ordered_json out{{"config", config_to_json(config)}};
  for (auto& [key, value] : body.items()) out[key] = value;
  io::write_file(config.output + ".json", out.dump(2) + "\n");
}

void write_csv(const RunConfig& config, const std::vector<CurveSample>& curves,
               const std::vector<std::string>& names) {
  io::write_file(config.output + ".csv",
                 io::curves_to_csv(curves, names, config_to_json(config)));
}

void write_svg(const RunConfig& config, const plot::Figure& figure) {
  io::write_file(config.output + ".svg", figure.render("config: " + stamp(config)));
}

// ---- commands -------------------------------------------------------------

void run_simulate(const RunConfig& config) {
  const auto points = simulate_pattern(config, config.seed);
  io::write_file(config.output + ".csv",
                 io::points_to_csv(points, config_to_json(config)));
}

void run_ph(const RunConfig& config) {
  if (config.inputs.empty()) throw Error(ErrorKind::kInvalidArgument, "ph: no input files");
  const auto diagrams = load_diagrams(config.inputs, config);
  ordered_json body;
  if (diagrams.size() == 1) {
    body = io::diagram_to_json(diagrams.front());
  } else {
    body["diagrams"] = ordered_json::array();
    for (const auto& d : diagrams) body["diagrams"].push_back(io::diagram_to_json(d));
  }
  write_json(config, std::move(body));

  plot::Figure figure("persistence diagram", "birth", "death");
  figure.add_diagonal();
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    std::vector<Point2> pts;
    for (const auto& p : diagrams[i].points) pts.push_back({p.birth, p.death});
    figure.add_points(std::move(pts), kPalette[i % 8]);
  }
  write_svg(config, figure);
}

void run_apf(const RunConfig& config) {
  const auto curves = load_curves(config.inputs, config);
  write_csv(config, curves, {});
  plot::Figure figure("accumulated persistence function", "m", "APF");
  for (std::size_t i = 0; i < curves.size(); ++i) figure.add_curve(curves[i], kPalette[i % 8]);
  write_svg(config, figure);
}

void run_envelope(const RunConfig& config) {
  if (config.inputs.size() != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "envelope: expects exactly one observed point pattern");
  }
  if (config.simulations < 1) {
    throw Error(ErrorKind::kInvalidArgument, "envelope: --r must be positive");
  }
  const auto observed = io::parse_points(config.inputs.front());
  RunConfig null_model = config;
  if (!null_model.rho) {
    null_model.rho = static_cast<double>(observed.size()) / config.region.area();
  }
  std::vector<int> dims{config.k};
  if (config.combine) dims = {0, 1};

  auto curves_of = [&](const std::vector<Point2>& points) {
    const auto filtration = geometry::alpha_filtration(points);
    std::vector<CurveSample> out;
    for (int k : dims) {
      out.push_back(curve_of(persistence::ph_pointcloud(filtration, k, tiebreak(config)),
                             config));
    }
    return out;
  };
  const auto observed_curves = curves_of(observed);
  std::vector<std::vector<CurveSample>> simulated(config.simulations);
  parallel_for(config.simulations, config.threads, [&](std::size_t i) {
    simulated[i] = curves_of(simulate_pattern(null_model, derive_seed(config.seed, i)));
  });

  std::vector<envelope::EnvelopeInput> inputs;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    envelope::EnvelopeInput input{observed_curves[d], {}};
    for (const auto& sim : simulated) input.simulated.push_back(sim[d]);
    inputs.push_back(std::move(input));
  }
  const auto result = envelope::combine_envelopes(inputs, config.alpha);

  write_json(config, {{"decision", result.reject ? "reject" : "accept"},
                      {"reject", result.reject},
                      {"statistic", result.statistic},
                      {"liberal_statistic", result.liberal_statistic},
                      {"l_alpha", result.l_alpha},
                      {"observed_rank", result.ranks.front()},
                      {"no_valid_l", result.no_valid_l},
                      {"null_rho", *null_model.rho},
                      {"observed_points", observed.size()}});

  // Combined bands live on the index axis of the joined curves.
  CurveSample joined_observed = result.band.lower;
  joined_observed.values.clear();
  for (const auto& c : observed_curves) {
    joined_observed.values.insert(joined_observed.values.end(), c.values.begin(),
                                  c.values.end());
  }
  write_csv(config, {result.band.lower, result.band.upper, joined_observed},
            {"lower", "upper", "observed"});
  plot::Figure figure(std::string("global rank envelope (") +
                          (result.reject ? "reject" : "accept") + ")",
                      dims.size() > 1 ? "index" : "m", "APF");
  plot::Band band;
  for (std::size_t j = 0; j < result.band.lower.n_grid(); ++j) {
    band.x.push_back(result.band.lower.grid_point(j));
  }
  band.lower = result.band.lower.values;
  band.upper = result.band.upper.values;
  figure.add_band(std::move(band));
  figure.add_curve(joined_observed, "#d62728", 1.5);
  write_svg(config, figure);
}

void run_boxplot(const RunConfig& config) {
  const auto curves = load_curves(config.inputs, config);
  const auto result = fda::functional_boxplot(curves, config.inflation);
  write_json(config, {{"central_index", result.central_index},
                      {"outlier_indices", result.outlier_indices},
                      {"depths", result.depths}});
  write_csv(config,
            {curves[result.central_index], result.central_lower, result.central_upper,
             result.fence_lower, result.fence_upper},
            {"deepest", "central_lower", "central_upper", "fence_lower", "fence_upper"});
  plot::Figure figure("functional boxplot", "m", "APF");
  plot::Band band;
  for (std::size_t j = 0; j < curves.front().n_grid(); ++j) {
    band.x.push_back(curves.front().grid_point(j));
  }
  band.lower = result.central_lower.values;
  band.upper = result.central_upper.values;
  band.colour = "#d9d9f3";
  figure.add_band(std::move(band));
  figure.add_curve(result.fence_lower, "#1f3f9f", 1.0, true);
  figure.add_curve(result.fence_upper, "#1f3f9f", 1.0, true);
  for (std::size_t i : result.outlier_indices) figure.add_curve(curves[i], "#d62728", 0.8);
  figure.add_curve(curves[result.central_index], "black", 1.5);
  write_svg(config, figure);
}

void run_ci_mean(const RunConfig& config) {
  const auto curves = load_curves(config.inputs, config);
  const auto band = bootstrap::mean_band(curves, config.alpha, config.resamples,
                                         config.seed, config.threads);
  write_json(config, {{"curves", curves.size()},
                      {"q_hat", band.q_hat},
                      {"half_width", band.half_width}});
  write_csv(config, {band.mean, band.lower, band.upper}, {"mean", "lower", "upper"});
  plot::Figure figure("bootstrap confidence band for the mean APF", "m", "APF");
  plot::Band region;
  for (std::size_t j = 0; j < band.mean.n_grid(); ++j) {
    region.x.push_back(band.mean.grid_point(j));
  }
  region.lower = band.lower.values;
  region.upper = band.upper.values;
  figure.add_band(std::move(region));
  figure.add_curve(band.mean, "black", 1.5);
  write_svg(config, figure);
}

void run_two_sample(const RunConfig& config) {
  const auto a = load_curves(config.inputs, config);
  const auto b = load_curves(config.group_b, config);
  const auto result = bootstrap::two_sample(a, b, config.statistic, config.alpha,
                                            config.resamples, config.seed,
                                            config.interval, config.threads);
  write_json(config, {{"decision", result.reject ? "reject" : "accept"},
                      {"reject", result.reject},
                      {"statistic", result.statistic},
                      {"q_hat", result.q_hat},
                      {"p_hat", result.p_hat},
                      {"r1", a.size()},
                      {"r2", b.size()}});
}

void run_cluster(const RunConfig& config) {
  const auto curves = load_curves(config.inputs, config);
  const auto result =
      fda::kmeans_curves(curves, config.clusters, config.seed, config.max_iter,
                         config.restarts);
  write_json(config, {{"labels", result.labels},
                      {"iterations", result.iterations},
                      {"objective_trace", result.objective_trace}});
  write_csv(config, result.centres, {});
  plot::Figure figure("K-means clusters", "m", "APF");
  for (std::size_t i = 0; i < curves.size(); ++i) {
    figure.add_curve(curves[i], kPalette[result.labels[i] % 8], 0.6);
  }
  for (const auto& c : result.centres) figure.add_curve(c, "black", 1.5);
  write_svg(config, figure);
}

void run_classify(const RunConfig& config) {
  if (config.groups.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "classify: give at least one --group");
  }
  std::vector<std::vector<CurveSample>> groups;
  for (const auto& file : config.groups) groups.push_back(load_curves({file}, config));
  const auto queries = load_curves(config.inputs, config);
  std::vector<std::size_t> labels;
  for (const auto& q : queries) labels.push_back(fda::classify(q, groups, config.trim));
  write_json(config, {{"labels", labels}});
}

}  // namespace

ordered_json config_to_json(const RunConfig& c) {
  ordered_json j{{"command", c.command}, {"inputs", c.inputs}};
  if (!c.group_b.empty()) j["group_b"] = c.group_b;
  if (!c.groups.empty()) j["groups"] = c.groups;
  j["k"] = c.k;
  j["combine"] = c.combine;
  j["seeded_ties"] = c.seeded_ties;
  j["window"] = window_json(c.window);
  j["grid"] = c.n_grid;
  j["allocated_time"] = c.allocated_time ? ordered_json(*c.allocated_time) : ordered_json();
  j["alpha"] = c.alpha;
  j["B"] = c.resamples;
  j["r"] = c.simulations;
  j["seed"] = c.seed;
  j["statistic"] = c.statistic == bootstrap::Statistic::kKs ? "ks" : "l1";
  j["interval"] = c.interval ? window_json(*c.interval) : ordered_json();
  j["K"] = c.clusters;
  j["max_iter"] = c.max_iter;
  j["restarts"] = c.restarts;
  j["inflation"] = c.inflation;
  j["trim"] = c.trim;
  ordered_json circles = ordered_json::array();
  for (const auto& s : c.circles) circles.push_back({s.center.x, s.center.y, s.radius});
  j["model"] = {{"name", c.model},
                {"region", {c.region.x0, c.region.x1, c.region.y0, c.region.y1}},
                {"rho", c.rho ? ordered_json(*c.rho) : ordered_json()},
                {"kappa", c.kappa},
                {"radius", c.radius},
                {"mu", c.mu ? ordered_json(*c.mu) : ordered_json()},
                {"beta", c.beta},
                {"hardcore", c.hardcore},
                {"cell", c.cell ? ordered_json(*c.cell) : ordered_json()},
                {"count", c.count},
                {"sigma", c.sigma},
                {"circles", std::move(circles)}};
  return j;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kBadK:
    case ErrorKind::kBadRank:
    case ErrorKind::kWindowOutOfRange:
      return 1;
    case ErrorKind::kNumericFailure:
      return 3;
    default:
      return 2;
  }
}

ordered_json error_to_json(const Error& error) {
  ordered_json j{{"error", std::string(to_string(error.kind()))},
                 {"message", error.what()},
                 {"exit_code", exit_code(error.kind())}};
  if (error.line() != 0) j["line"] = error.line();
  return j;
}

std::vector<Point2> simulate_pattern(const RunConfig& config, std::uint64_t seed) {
  const double rho = config.rho.value_or(100.0);
  const std::string& model = config.model;
  if (model == "poisson") return pointprocess::poisson(rho, config.region, seed);
  if (model == "matern-cluster") {
    return pointprocess::matern_cluster(config.kappa, config.radius,
                                        config.mu.value_or(rho / config.kappa),
                                        config.region, seed);
  }
  if (model == "baddeley-silverman") {
    return pointprocess::baddeley_silverman(config.region, seed,
                                            config.cell.value_or(1.0 / std::sqrt(rho)));
  }
  if (model == "matern-hardcore") {
    return pointprocess::matern_hardcore(config.beta, config.hardcore, config.region, seed);
  }
  if (model == "circles") {
    std::vector<pointprocess::CircleSpec> circles = config.circles;
    if (circles.empty()) {
      circles = {{{-1, -1}, 0.5}, {{1, -1}, 0.5}, {{0, 1}, 0.5}};
    }
    return pointprocess::sample_on_circles(config.count, circles, config.sigma, seed);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown model \"" + model + "\"");
}

void run(const RunConfig& config) {
  if (config.output.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "an output prefix is required");
  }
  const std::string& c = config.command;
  if (c == "simulate") return run_simulate(config);
  if (c == "ph") return run_ph(config);
  if (c == "apf") return run_apf(config);
  if (c == "envelope") return run_envelope(config);
  if (c == "boxplot") return run_boxplot(config);
  if (c == "ci-mean") return run_ci_mean(config);
  if (c == "two-sample") return run_two_sample(config);
  if (c == "cluster") return run_cluster(config);
  if (c == "classify") return run_classify(config);
  throw Error(ErrorKind::kInvalidArgument, "unknown command \"" + c + "\"");
}

}  // namespace apfstat::cli

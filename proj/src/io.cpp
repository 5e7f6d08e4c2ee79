#include "apfstat/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "apfstat/error.hpp"

namespace apfstat::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool parse_number(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_integer(std::string_view s, std::int64_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Calls fn(line_number, line) for non-blank, non-comment lines.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    const auto line = trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') fn(number, line);
    if (end == text.size()) break;
    start = end + 1;
  }
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::kParseError,
              "line " + std::to_string(line) + ": " + what, line);
}

std::string config_comment(const ordered_json& config) {
  return config.is_null() ? std::string() : "# config: " + config.dump() + "\n";
}

}  // namespace

std::vector<geometry::Point2> parse_points_text(std::string_view text) {
  std::vector<geometry::Point2> points;
  bool first = true;
  for_each_line(text, [&](std::size_t number, std::string_view line) {
    const auto fields = split(line, ',');
    double x = 0.0, y = 0.0;
    const bool ok = fields.size() == 2 && parse_number(fields[0], x) &&
                    parse_number(fields[1], y);
    if (!ok) {
      if (first && fields.size() == 2 && !parse_number(fields[0], x)) {
        first = false;
        return;  // header
      }
      parse_error(number, "expected two numbers \"x,y\"");
    }
    first = false;
    points.push_back({x, y});
  });
  return points;
}

std::vector<geometry::Point2> parse_points(const std::string& path) {
  return parse_points_text(read_file(path));
}

persistence::HeightGraph parse_heightgraph_text(std::string_view text) {
  persistence::HeightGraph graph;
  for_each_line(text, [&](std::size_t number, std::string_view line) {
    const auto w = words(line);
    if (w[0] == "v") {
      std::int64_t id = 0;
      std::array<double, 3> xyz{};
      if (w.size() != 5 || !parse_integer(w[1], id) ||
          !parse_number(w[2], xyz[0]) || !parse_number(w[3], xyz[1]) ||
          !parse_number(w[4], xyz[2])) {
        parse_error(number, "expected \"v id x y z\"");
      }
      graph.vertices.push_back({id, xyz[2], xyz});
    } else if (w[0] == "e") {
      std::int64_t a = 0, b = 0;
      if (w.size() != 3 || !parse_integer(w[1], a) || !parse_integer(w[2], b)) {
        parse_error(number, "expected \"e id1 id2\"");
      }
      graph.edges.push_back({a, b});
    } else {
      parse_error(number, "expected a \"v\" or \"e\" record");
    }
  });
  graph.validate();
  return graph;
}

persistence::HeightGraph parse_heightgraph(const std::string& path) {
  return parse_heightgraph_text(read_file(path));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::kIoError, "failed writing " + path);
}

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

ordered_json diagram_to_json(const persistence::PersistenceDiagram& diagram) {
  ordered_json points = ordered_json::array();
  for (const auto& p : diagram.points) {
    points.push_back({{"birth", p.birth}, {"death", p.death}, {"mult", p.mult}});
  }
  return {{"dim", diagram.dim}, {"points", std::move(points)}};
}

persistence::PersistenceDiagram diagram_from_json(const ordered_json& value) {
  try {
    persistence::PersistenceDiagram d;
    d.dim = value.at("dim").get<int>();
    for (const auto& p : value.at("points")) {
      const auto mult = p.contains("mult") ? p.at("mult").get<std::int64_t>() : 1;
      if (mult < 1) {
        throw Error(ErrorKind::kParseError, "diagram: multiplicity must be positive");
      }
      d.points.push_back({p.at("birth").get<double>(), p.at("death").get<double>(),
                          static_cast<std::uint32_t>(mult)});
    }
    d.normalize();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("diagram JSON: ") + e.what());
  }
}

std::vector<persistence::PersistenceDiagram> diagrams_from_json(
    const ordered_json& value) {
  std::vector<persistence::PersistenceDiagram> out;
  if (value.is_object() && value.contains("diagrams")) {
    for (const auto& d : value.at("diagrams")) out.push_back(diagram_from_json(d));
  } else {
    out.push_back(diagram_from_json(value));
  }
  return out;
}

std::string points_to_csv(const std::vector<geometry::Point2>& points,
                          const ordered_json& config) {
  std::string out = config_comment(config) + "x,y\n";
  for (const auto& p : points) {
    out += format_double(p.x) + "," + format_double(p.y) + "\n";
  }
  return out;
}

std::string curves_to_csv(const std::vector<apf::CurveSample>& curves,
                          const std::vector<std::string>& names,
                          const ordered_json& config) {
  apf::require_shared_grid(curves);
  std::string out = config_comment(config) + "m";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    out += ",";
    out += i < names.size() ? names[i]
                            : (curves.size() == 1 ? "value" : "curve_" + std::to_string(i));
  }
  out += "\n";
  const auto& first = curves.front();
  for (std::size_t j = 0; j < first.n_grid(); ++j) {
    out += format_double(first.grid_point(j));
    for (const auto& c : curves) out += "," + format_double(c.values[j]);
    out += "\n";
  }
  return out;
}

std::vector<apf::CurveSample> curves_from_csv(std::string_view text) {
  std::vector<double> grid;
  std::vector<std::vector<double>> columns;
  bool header = true;
  for_each_line(text, [&](std::size_t number, std::string_view line) {
    const auto fields = split(line, ',');
    if (header) {
      if (fields.size() < 2 || fields[0] != "m") {
        parse_error(number, "curve CSV must start with an \"m,...\" header");
      }
      columns.resize(fields.size() - 1);
      header = false;
      return;
    }
    if (fields.size() != columns.size() + 1) parse_error(number, "wrong number of fields");
    double m = 0.0;
    if (!parse_number(fields[0], m)) parse_error(number, "bad grid value");
    grid.push_back(m);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      double v = 0.0;
      if (!parse_number(fields[c + 1], v)) parse_error(number, "bad curve value");
      columns[c].push_back(v);
    }
  });
  if (grid.size() < 2) {
    throw Error(ErrorKind::kParseError, "curve CSV needs at least two grid points");
  }
  const apf::Window window{grid.front(), grid.back()};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double expected = apf::grid_point(window, grid.size(), i);
    if (std::abs(grid[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw Error(ErrorKind::kGridMismatch, "curve CSV grid is not equidistant");
    }
  }
  std::vector<apf::CurveSample> out;
  for (auto& column : columns) out.push_back({window, std::move(column)});
  return out;
}

}  // namespace apfstat::io

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "apfstat/apf.hpp"
#include "apfstat/geometry.hpp"
#include "apfstat/persistence.hpp"
#include "json.hpp"

namespace apfstat::io {

using nlohmann::ordered_json;

// "x,y" per line. A first line that does not parse as two numbers is taken
// as a header; blank lines and lines starting with '#' are skipped. Other
// bad lines throw Error(kParseError) carrying the 1-based line number.
std::vector<geometry::Point2> parse_points_text(std::string_view text);
std::vector<geometry::Point2> parse_points(const std::string& path);

// "v id x y z" and "e id1 id2" lines; the height of a vertex is z.
persistence::HeightGraph parse_heightgraph_text(std::string_view text);
persistence::HeightGraph parse_heightgraph(const std::string& path);

std::string read_file(const std::string& path);
// Writes atomically enough for our purposes; throws Error(kIoError).
void write_file(const std::string& path, std::string_view contents);

// Shortest decimal that reads back to the same double, e.g. 0.1 -> "0.1".
std::string format_double(double value);

ordered_json diagram_to_json(const persistence::PersistenceDiagram& diagram);
persistence::PersistenceDiagram diagram_from_json(const ordered_json& value);
// Accepts a single diagram object or an object with a "diagrams" array.
std::vector<persistence::PersistenceDiagram> diagrams_from_json(
    const ordered_json& value);

std::string points_to_csv(const std::vector<geometry::Point2>& points,
                          const ordered_json& config);

// Curves on a shared grid: "m,value" for one curve, "m,<name>,..." for
// several. The config is written as a leading "# config: {...}" comment.
std::string curves_to_csv(const std::vector<apf::CurveSample>& curves,
                          const std::vector<std::string>& names,
                          const ordered_json& config);
// Reads every value column of a curve CSV. The window is taken from the
// first and last m; the grid must be equidistant.
std::vector<apf::CurveSample> curves_from_csv(std::string_view text);

}  // namespace apfstat::io

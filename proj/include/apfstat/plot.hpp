#pragma once

#include <string>
#include <vector>

#include "apfstat/apf.hpp"
#include "apfstat/geometry.hpp"

namespace apfstat::plot {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string colour = "#1f77b4";
  double width = 1.0;
  bool dashed = false;
};

struct Band {
  std::vector<double> x;
  std::vector<double> lower;
  std::vector<double> upper;
  std::string colour = "#c6dbef";
};

// Static SVG line/scatter chart with axes ticks at the data range.
class Figure {
 public:
  explicit Figure(std::string title, std::string x_label = "m",
                  std::string y_label = "");

  void add_band(Band band) { bands_.push_back(std::move(band)); }
  void add_series(Series series) { series_.push_back(std::move(series)); }
  void add_curve(const apf::CurveSample& curve, std::string colour,
                 double width = 1.0, bool dashed = false);
  void add_points(std::vector<geometry::Point2> points, std::string colour);
  // Draws y = x, for persistence diagrams.
  void add_diagonal() { diagonal_ = true; }

  // `comment` is embedded verbatim as an XML comment (the producing config).
  std::string render(const std::string& comment = {}) const;

 private:
  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<Band> bands_;
  std::vector<Series> series_;
  std::vector<std::vector<geometry::Point2>> scatter_;
  std::vector<std::string> scatter_colours_;
  bool diagonal_ = false;
};

}  // namespace apfstat::plot

#include "apfstat/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace apfstat::plot {
namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 60, kRight = 20, kTop = 36, kBottom = 44;

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

std::string tick(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4g", v);
  return buffer;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (lo > hi) lo = 0, hi = 1;
    if (lo == hi) lo -= 0.5, hi += 0.5;
  }
};

}  // namespace

Figure::Figure(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void Figure::add_curve(const apf::CurveSample& curve, std::string colour,
                       double width, bool dashed) {
  Series s;
  for (std::size_t i = 0; i < curve.n_grid(); ++i) {
    s.x.push_back(curve.grid_point(i));
    s.y.push_back(curve.values[i]);
  }
  s.colour = std::move(colour);
  s.width = width;
  s.dashed = dashed;
  series_.push_back(std::move(s));
}

void Figure::add_points(std::vector<geometry::Point2> points, std::string colour) {
  scatter_.push_back(std::move(points));
  scatter_colours_.push_back(std::move(colour));
}

std::string Figure::render(const std::string& comment) const {
  Range xr, yr;
  for (const auto& b : bands_) {
    for (double v : b.x) xr.add(v);
    for (double v : b.lower) yr.add(v);
    for (double v : b.upper) yr.add(v);
  }
  for (const auto& s : series_) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  for (const auto& pts : scatter_) {
    for (const auto& p : pts) {
      xr.add(p.x);
      yr.add(p.y);
    }
  }
  if (diagonal_) {
    xr.add(yr.lo);
    yr.add(xr.lo);
  }
  xr.finish();
  yr.finish();
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto sy = [&](double y) { return kTop + (1 - (y - yr.lo) / (yr.hi - yr.lo)) * plot_h; };
  auto clampy = [&](double y) { return std::isfinite(y) ? y : (y > 0 ? yr.hi : yr.lo); };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    num(kWidth) + "\" height=\"" + num(kHeight) + "\">\n";
  if (!comment.empty()) {
    // "--" may not appear inside an XML comment.
    std::string body = escape(comment);
    for (std::size_t at = body.find("--"); at != std::string::npos; at = body.find("--", at)) {
      body.replace(at, 2, "- -");
    }
    out += "<!-- " + body + " -->\n";
  }
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">" + escape(title_) + "</text>\n";

  for (const auto& b : bands_) {
    std::string path;
    for (std::size_t i = 0; i < b.x.size(); ++i) {
      path += (i == 0 ? "M" : "L") + num(sx(b.x[i])) + "," + num(sy(clampy(b.upper[i]))) + " ";
    }
    for (std::size_t i = b.x.size(); i-- > 0;) {
      path += "L" + num(sx(b.x[i])) + "," + num(sy(clampy(b.lower[i]))) + " ";
    }
    out += "<path d=\"" + path + "Z\" fill=\"" + b.colour + "\" stroke=\"none\"/>\n";
  }
  if (diagonal_) {
    const double lo = std::max(xr.lo, yr.lo), hi = std::min(xr.hi, yr.hi);
    out += "<line x1=\"" + num(sx(lo)) + "\" y1=\"" + num(sy(lo)) + "\" x2=\"" +
           num(sx(hi)) + "\" y2=\"" + num(sy(hi)) + "\" stroke=\"#999\"/>\n";
  }
  for (const auto& s : series_) {
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      points += num(sx(s.x[i])) + "," + num(sy(clampy(s.y[i]))) + " ";
    }
    out += "<polyline fill=\"none\" stroke=\"" + s.colour + "\" stroke-width=\"" +
           num(s.width) + "\"" + (s.dashed ? " stroke-dasharray=\"4,3\"" : "") +
           " points=\"" + points + "\"/>\n";
  }
  for (std::size_t k = 0; k < scatter_.size(); ++k) {
    for (const auto& p : scatter_[k]) {
      out += "<circle cx=\"" + num(sx(p.x)) + "\" cy=\"" + num(sy(p.y)) +
             "\" r=\"2\" fill=\"" + scatter_colours_[k] + "\"/>\n";
    }
  }

  // Axes with end ticks.
  const double x0 = kLeft, x1 = kLeft + plot_w, y0 = kTop + plot_h, y1 = kTop;
  out += "<g stroke=\"black\" fill=\"none\"><line x1=\"" + num(x0) + "\" y1=\"" + num(y0) +
         "\" x2=\"" + num(x1) + "\" y2=\"" + num(y0) + "\"/><line x1=\"" + num(x0) +
         "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(y1) + "\"/></g>\n";
  out += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    out += "<text x=\"" + num(sx(fx)) + "\" y=\"" + num(y0 + 16) +
           "\" text-anchor=\"middle\">" + tick(fx) + "</text>\n";
    out += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(sy(fy) + 4) +
           "\" text-anchor=\"end\">" + tick(fy) + "</text>\n";
  }
  out += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 6) +
         "\" text-anchor=\"middle\">" + escape(x_label_) + "</text>\n";
  if (!y_label_.empty()) {
    out += "<text x=\"14\" y=\"" + num(kTop + plot_h / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
           num(kTop + plot_h / 2) + ")\">" + escape(y_label_) + "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace apfstat::plot

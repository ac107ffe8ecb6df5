#pragma once

// Static 1200x800 SVG charts: scatter by category, boxplots and line charts.
// Output depends only on the inputs (fixed number formatting, stable ordering).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "occ2vec/error.hpp"

namespace occ2vec::svg {

inline constexpr int kWidth = 1200;
inline constexpr int kHeight = 800;

inline std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

// Qualitative palette, cycled.
inline const std::string& color(std::size_t i) {
  static const std::array<std::string, 12> palette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                      "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                      "#bcbd22", "#17becf", "#393b79", "#637939"};
  return palette[i % palette.size()];
}

struct Frame {
  double x0 = 80, x1 = 860, y0 = 60, y1 = 720;  // plot area in pixels
  double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;

  double px(double x) const { return x0 + (x - lo_x) / (hi_x - lo_x) * (x1 - x0); }
  double py(double y) const { return y1 - (y - lo_y) / (hi_y - lo_y) * (y1 - y0); }
};

inline void fit_range(double& lo, double& hi) {
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
}

class Document {
 public:
  explicit Document(const std::string& title) {
    out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) + "\" height=\"" +
            std::to_string(kHeight) + "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " + std::to_string(kHeight) +
            "\">\n";
    out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(kWidth / 2.0, 32, title, 20, "middle");
  }

  void text(double x, double y, const std::string& s, int size = 12, const char* anchor = "start") {
    out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
            std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + escape(s) + "</text>\n";
  }
  void line(double xa, double ya, double xb, double yb, const std::string& stroke = "#000", double width = 1.0) {
    out_ += "<line x1=\"" + num(xa) + "\" y1=\"" + num(ya) + "\" x2=\"" + num(xb) + "\" y2=\"" + num(yb) +
            "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke = "#000") {
    out_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
            "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
  }
  void circle(double x, double y, double r, const std::string& fill) {
    out_ += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(r) + "\" fill=\"" + fill +
            "\" fill-opacity=\"0.8\"/>\n";
  }
  void polyline(const std::vector<std::array<double, 2>>& pts, const std::string& stroke) {
    out_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) out_ += (i ? " " : "") + num(pts[i][0]) + "," + num(pts[i][1]);
    out_ += "\"/>\n";
  }

  void axes(const Frame& f, const std::string& xlabel, const std::string& ylabel) {
    rect(f.x0, f.y0, f.x1 - f.x0, f.y1 - f.y0, "none");
    for (int t = 0; t <= 4; ++t) {
      const double vx = f.lo_x + (f.hi_x - f.lo_x) * t / 4.0, vy = f.lo_y + (f.hi_y - f.lo_y) * t / 4.0;
      line(f.px(vx), f.y1, f.px(vx), f.y1 + 5);
      text(f.px(vx), f.y1 + 20, num(vx), 11, "middle");
      line(f.x0 - 5, f.py(vy), f.x0, f.py(vy));
      text(f.x0 - 8, f.py(vy) + 4, num(vy), 11, "end");
    }
    text((f.x0 + f.x1) / 2, f.y1 + 45, xlabel, 13, "middle");
    out_ += "<text transform=\"translate(24," + num((f.y0 + f.y1) / 2) +
            ") rotate(-90)\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" + escape(ylabel) +
            "</text>\n";
  }

  void legend(const std::vector<std::string>& labels, double x = 880, double y = 70) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const double yy = y + 18.0 * static_cast<double>(i);
      rect(x, yy - 9, 10, 10, color(i), color(i));
      text(x + 16, yy, labels[i], 11);
    }
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  std::string out_;
};

/// Points coloured by a category label; categories listed in sorted order.
inline std::string scatter(const std::string& title, const std::vector<std::array<double, 2>>& pts,
                           const std::vector<std::string>& labels, const std::string& xlabel = "dimension 1",
                           const std::string& ylabel = "dimension 2") {
  if (pts.size() != labels.size()) throw InputError("svg scatter: points and labels differ in length");
  Frame f;
  f.lo_x = f.lo_y = HUGE_VAL;
  f.hi_x = f.hi_y = -HUGE_VAL;
  for (const auto& p : pts) {
    f.lo_x = std::min(f.lo_x, p[0]);
    f.hi_x = std::max(f.hi_x, p[0]);
    f.lo_y = std::min(f.lo_y, p[1]);
    f.hi_y = std::max(f.hi_y, p[1]);
  }
  if (pts.empty()) f.lo_x = f.lo_y = 0, f.hi_x = f.hi_y = 1;
  fit_range(f.lo_x, f.hi_x);
  fit_range(f.lo_y, f.hi_y);

  std::map<std::string, std::size_t> cats;
  for (const auto& l : labels) cats.emplace(l, 0);
  std::vector<std::string> names;
  for (auto& [name, idx] : cats) {
    idx = names.size();
    names.push_back(name);
  }
  Document d(title);
  d.axes(f, xlabel, ylabel);
  for (std::size_t i = 0; i < pts.size(); ++i) d.circle(f.px(pts[i][0]), f.py(pts[i][1]), 3.5, color(cats[labels[i]]));
  d.legend(names);
  return d.finish();
}

struct BoxStats {
  std::string label;
  std::size_t n = 0;
  double q1 = 0, median = 0, q3 = 0;
  double whisker_low = 0, whisker_high = 0;  // most extreme data within 1.5 IQR
  std::vector<double> outliers;
};

/// Linear-interpolation quantile of sorted data (type 7).
inline double quantile_sorted(const std::vector<double>& s, double q) {
  if (s.empty()) throw InputError("quantile of empty data");
  const double h = (static_cast<double>(s.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

inline BoxStats box_stats(std::string label, std::vector<double> values) {
  if (values.empty()) throw InputError("box_stats: group '" + label + "' is empty");
  std::sort(values.begin(), values.end());
  BoxStats b;
  b.label = std::move(label);
  b.n = values.size();
  b.q1 = quantile_sorted(values, 0.25);
  b.median = quantile_sorted(values, 0.5);
  b.q3 = quantile_sorted(values, 0.75);
  const double iqr = b.q3 - b.q1, lo = b.q1 - 1.5 * iqr, hi = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  bool have_low = false;
  for (double v : values) {
    if (v < lo || v > hi) {
      b.outliers.push_back(v);
      continue;
    }
    if (!have_low) {
      b.whisker_low = v;
      have_low = true;
    }
    b.whisker_high = v;
  }
  return b;
}

inline std::string boxplot(const std::string& title, const std::vector<BoxStats>& boxes, const std::string& ylabel) {
  Frame f;
  f.x0 = 300;
  f.x1 = 1150;
  f.y0 = 60;
  f.y1 = 760;
  // Horizontal boxes: value on x, one row per group.
  f.lo_x = HUGE_VAL;
  f.hi_x = -HUGE_VAL;
  for (const auto& b : boxes) {
    f.lo_x = std::min({f.lo_x, b.whisker_low, b.outliers.empty() ? b.whisker_low : b.outliers.front()});
    f.hi_x = std::max({f.hi_x, b.whisker_high, b.outliers.empty() ? b.whisker_high : b.outliers.back()});
  }
  if (boxes.empty()) f.lo_x = 0, f.hi_x = 1;
  fit_range(f.lo_x, f.hi_x);
  f.lo_y = 0;
  f.hi_y = static_cast<double>(std::max<std::size_t>(boxes.size(), 1));

  Document d(title);
  d.rect(f.x0, f.y0, f.x1 - f.x0, f.y1 - f.y0, "none");
  for (int t = 0; t <= 4; ++t) {
    const double v = f.lo_x + (f.hi_x - f.lo_x) * t / 4.0;
    d.line(f.px(v), f.y1, f.px(v), f.y1 + 5);
    d.text(f.px(v), f.y1 + 20, num(v), 11, "middle");
  }
  d.text((f.x0 + f.x1) / 2, f.y1 + 36, ylabel, 13, "middle");
  const double row = (f.y1 - f.y0) / f.hi_y;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    const double cy = f.y0 + row * (static_cast<double>(i) + 0.5), hh = std::min(row * 0.35, 14.0);
    d.text(f.x0 - 8, cy + 4, b.label + " (n=" + std::to_string(b.n) + ")", 11, "end");
    d.line(f.px(b.whisker_low), cy, f.px(b.q1), cy);
    d.line(f.px(b.q3), cy, f.px(b.whisker_high), cy);
    d.line(f.px(b.whisker_low), cy - hh / 2, f.px(b.whisker_low), cy + hh / 2);
    d.line(f.px(b.whisker_high), cy - hh / 2, f.px(b.whisker_high), cy + hh / 2);
    d.rect(f.px(b.q1), cy - hh, f.px(b.q3) - f.px(b.q1), 2 * hh, color(i));
    d.line(f.px(b.median), cy - hh, f.px(b.median), cy + hh, "#000", 2.0);
    for (double o : b.outliers) d.circle(f.px(o), cy, 2.5, "#000");
  }
  return d.finish();
}

struct Series {
  std::string label;
  std::vector<std::array<double, 2>> points;
};

inline std::string line_chart(const std::string& title, const std::vector<Series>& series, const std::string& xlabel,
                              const std::string& ylabel) {
  Frame f;
  f.lo_x = f.lo_y = HUGE_VAL;
  f.hi_x = f.hi_y = -HUGE_VAL;
  for (const auto& s : series)
    for (const auto& p : s.points) {
      f.lo_x = std::min(f.lo_x, p[0]);
      f.hi_x = std::max(f.hi_x, p[0]);
      f.lo_y = std::min(f.lo_y, p[1]);
      f.hi_y = std::max(f.hi_y, p[1]);
    }
  if (!(f.hi_x >= f.lo_x)) f.lo_x = f.lo_y = 0, f.hi_x = f.hi_y = 1;
  fit_range(f.lo_x, f.hi_x);
  fit_range(f.lo_y, f.hi_y);
  Document d(title);
  d.axes(f, xlabel, ylabel);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::vector<std::array<double, 2>> px;
    for (const auto& p : series[i].points) px.push_back({f.px(p[0]), f.py(p[1])});
    d.polyline(px, color(i));
    names.push_back(series[i].label);
  }
  d.legend(names);
  return d.finish();
}

}  // namespace occ2vec::svg

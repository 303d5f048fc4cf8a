#include "magcut/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "magcut/errors.hpp"
#include "magcut/signal_io.hpp"

namespace magcut {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double log10_clamped(double v) {
  if (!(v > 1e-18) || !std::isfinite(v)) return -18.0;
  return std::log10(v);
}

struct Panel {
  double x0, y0, width, height;  // plot area in page coordinates
};

// Maps data coordinates into a panel; y grows upward in data space.
struct Scale {
  double xmin, xmax, ymin, ymax;
  Panel panel;
  double x(double v) const {
    const double t = xmax > xmin ? (v - xmin) / (xmax - xmin) : 0.5;
    return panel.x0 + t * panel.width;
  }
  double y(double v) const {
    const double t = ymax > ymin ? (v - ymin) / (ymax - ymin) : 0.5;
    return panel.y0 + panel.height - t * panel.height;
  }
};

void draw_panel(std::string& svg, const SummaryStats& stats,
                const std::vector<std::string>& methods, const Panel& panel,
                bool variance, const std::string& y_label) {
  std::set<int> sn_set;
  double ymin = 1e300, ymax = -1e300;
  for (const SummaryCell& c : stats.cells) {
    sn_set.insert(c.s_n);
    const double v = log10_clamped(variance ? c.var_error : c.mean_error);
    ymin = std::min(ymin, v);
    ymax = std::max(ymax, v);
  }
  std::vector<int> sns(sn_set.begin(), sn_set.end());
  ymin = std::floor(ymin) - 0.5;
  ymax = std::ceil(ymax) + 0.5;

  Scale sc;
  sc.xmin = sns.front();
  sc.xmax = sns.back();
  if (sc.xmax == sc.xmin) {
    sc.xmin -= 1.0;
    sc.xmax += 1.0;
  }
  sc.ymin = ymin;
  sc.ymax = ymax;
  sc.panel = panel;

  // Frame.
  svg += "<rect x=\"" + num(panel.x0) + "\" y=\"" + num(panel.y0) + "\" width=\"" +
         num(panel.width) + "\" height=\"" + num(panel.height) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  // X ticks at each sampling number.
  for (int sn : sns) {
    const double px = sc.x(sn);
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(panel.y0 + panel.height) +
           "\" x2=\"" + num(px) + "\" y2=\"" + num(panel.y0 + panel.height + 5) +
           "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(px) + "\" y=\"" + num(panel.y0 + panel.height + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333333\">" +
           std::to_string(sn) + "</text>\n";
  }
  // Y ticks at integers.
  for (int t = static_cast<int>(std::ceil(sc.ymin)); t <= static_cast<int>(std::floor(sc.ymax)); ++t) {
    const double py = sc.y(t);
    svg += "<line x1=\"" + num(panel.x0 - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
           num(panel.x0) + "\" y2=\"" + num(py) +
           "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(panel.x0 - 8) + "\" y=\"" + num(py + 4) +
           "\" font-size=\"11\" text-anchor=\"end\" fill=\"#333333\">" +
           std::to_string(t) + "</text>\n";
  }
  // Axis labels.
  svg += "<text x=\"" + num(panel.x0 + panel.width / 2) + "\" y=\"" +
         num(panel.y0 + panel.height + 36) +
         "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#111111\">sampling number "
         "s_n</text>\n";
  svg += "<text x=\"" + num(panel.x0 - 34) + "\" y=\"" +
         num(panel.y0 + panel.height / 2) +
         "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#111111\" transform=\"rotate(-90 " +
         num(panel.x0 - 34) + " " + num(panel.y0 + panel.height / 2) + ")\">" + y_label +
         "</text>\n";

  // One polyline + markers per method.
  for (size_t mi = 0; mi < methods.size(); ++mi) {
    const std::string& method = methods[mi];
    const char* color = kPalette[mi % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string points;
    std::vector<std::pair<double, double>> pts;
    for (int sn : sns) {
      for (const SummaryCell& c : stats.cells) {
        if (c.method == method && c.s_n == sn) {
          const double v = log10_clamped(variance ? c.var_error : c.mean_error);
          pts.emplace_back(sc.x(sn), sc.y(v));
        }
      }
    }
    for (const auto& [px, py] : pts) {
      if (!points.empty()) points += " ";
      points += num(px) + "," + num(py);
    }
    if (pts.size() > 1)
      svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1.5\"/>\n";
    for (const auto& [px, py] : pts)
      svg += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";
  }
}

}  // namespace

std::string render_plot_svg(const SummaryStats& stats) {
  if (stats.cells.empty()) throw Error("emit_plot: empty summary stats");

  std::vector<std::string> methods;
  for (const SummaryCell& c : stats.cells)
    if (std::find(methods.begin(), methods.end(), c.method) == methods.end())
      methods.push_back(c.method);

  const double width = 900, height = 430;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
         num(height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" fill=\"#ffffff\"/>\n";

  // Legend.
  double lx = 70;
  for (size_t mi = 0; mi < methods.size(); ++mi) {
    const char* color = kPalette[mi % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg += "<circle cx=\"" + num(lx) + "\" cy=\"20\" r=\"4\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"" + num(lx + 10) + "\" y=\"24\" font-size=\"12\" fill=\"#111111\">" +
           methods[mi] + "</text>\n";
    lx += 24 + 7.0 * static_cast<double>(methods[mi].size());
  }

  draw_panel(svg, stats, methods, Panel{70, 60, 330, 290}, false, "log10(mean error)");
  draw_panel(svg, stats, methods, Panel{520, 60, 330, 290}, true, "log10(error variance)");

  svg += "</svg>\n";
  return svg;
}

void emit_plot(const SummaryStats& stats, const std::string& path) {
  write_text_file(path, render_plot_svg(stats));
}

}  // namespace magcut

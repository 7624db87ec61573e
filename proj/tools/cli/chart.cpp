#include "cli/chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ddosfc/csv.hpp"
#include "ddosfc/error.hpp"

namespace ddosfc::cli {

namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                                 "#d62728", "#9467bd", "#8c564b"};

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string px(double v) { return format_fixed(v, 2); }

std::string tick_label(double v, double span) {
  int decimals = 0;
  if (span < 10) decimals = 2;
  else if (span < 100) decimals = 1;
  return format_fixed(v, decimals);
}

}  // namespace

PlotArea plot_area(const ChartOptions& o) {
  return {72.0, static_cast<double>(o.width) - 150.0, 40.0, static_cast<double>(o.height) - 56.0};
}

std::string render_line_chart(std::span<const ChartSeries> series, const std::string& title,
                              const ChartOptions& options) {
  if (series.empty()) throw Error(ErrorCode::kEmptySeries, "chart needs at least one series");
  const std::size_t n = series.front().values.size();
  for (const auto& s : series) {
    if (s.values.size() != n) {
      throw Error(ErrorCode::kLengthMismatch, "chart series have different lengths");
    }
  }
  if (n < 2) throw Error(ErrorCode::kEmptySeries, "chart series need at least two points");

  double lo = series.front().values.front();
  double hi = lo;
  for (const auto& s : series) {
    for (double v : s.values) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "chart value is not finite");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi == lo) {
    // Flat data: centre it in a unit band.
    lo -= 1.0;
    hi += 1.0;
  }

  const PlotArea area = plot_area(options);
  auto map_x = [&](std::size_t i) {
    return area.left + (area.right - area.left) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  auto map_y = [&](double v) { return area.bottom - (v - lo) / (hi - lo) * (area.bottom - area.top); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
         "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
         std::to_string(options.width) + " " + std::to_string(options.height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + px((area.left + area.right) / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         escape(title) + "</text>\n";

  // Axes.
  svg += "<g stroke=\"#333\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + px(area.left) + "\" y1=\"" + px(area.bottom) + "\" x2=\"" + px(area.right) +
         "\" y2=\"" + px(area.bottom) + "\"/>\n";
  svg += "<line x1=\"" + px(area.left) + "\" y1=\"" + px(area.top) + "\" x2=\"" + px(area.left) +
         "\" y2=\"" + px(area.bottom) + "\"/>\n";
  svg += "</g>\n";

  svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  constexpr int kYTicks = 5;
  for (int k = 0; k < kYTicks; ++k) {
    const double v = lo + (hi - lo) * k / (kYTicks - 1);
    const double y = map_y(v);
    svg += "<line x1=\"" + px(area.left - 4) + "\" y1=\"" + px(y) + "\" x2=\"" + px(area.left) +
           "\" y2=\"" + px(y) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + px(area.left - 7) + "\" y=\"" + px(y + 4) + "\" text-anchor=\"end\">" +
           tick_label(v, hi - lo) + "</text>\n";
  }
  if (!options.x_ticks.empty()) {
    for (std::size_t i : {std::size_t{0}, (n - 1) / 2, n - 1}) {
      if (i >= options.x_ticks.size()) continue;
      const double x = map_x(i);
      svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(area.bottom) + "\" x2=\"" + px(x) +
             "\" y2=\"" + px(area.bottom + 4) + "\" stroke=\"#333\"/>\n";
      svg += "<text x=\"" + px(x) + "\" y=\"" + px(area.bottom + 18) +
             "\" text-anchor=\"middle\">" + escape(options.x_ticks[i]) + "</text>\n";
    }
  }
  svg += "<text x=\"" + px((area.left + area.right) / 2) + "\" y=\"" +
         px(static_cast<double>(options.height) - 12) + "\" text-anchor=\"middle\">" +
         escape(options.x_label) + "</text>\n";
  if (!options.y_label.empty()) {
    svg += "<text x=\"16\" y=\"" + px((area.top + area.bottom) / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           px((area.top + area.bottom) / 2) + ")\">" + escape(options.y_label) + "</text>\n";
  }
  svg += "</g>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[s % kPalette.size()]) +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) svg += ' ';
      svg += px(map_x(i)) + "," + px(map_y(series[s].values[i]));
    }
    svg += "\"/>\n";
  }

  // Legend.
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = area.top + 10 + 20.0 * static_cast<double>(s);
    const double x = area.right + 16;
    svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(y) + "\" x2=\"" + px(x + 24) + "\" y2=\"" +
           px(y) + "\" stroke=\"" + kPalette[s % kPalette.size()] + "\" stroke-width=\"3\"/>\n";
    svg += "<text x=\"" + px(x + 30) + "\" y=\"" + px(y + 4) + "\">" + escape(series[s].label) +
           "</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace ddosfc::cli

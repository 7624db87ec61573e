#pragma once

#include <span>
#include <string>
#include <vector>

namespace ddosfc::cli {

struct ChartSeries {
  std::string label;
  std::vector<double> values;
};

struct ChartOptions {
  int width = 960;
  int height = 420;
  std::string x_label = "period";
  std::string y_label;
  /// Optional label per x position; the first, middle and last are drawn.
  std::vector<std::string> x_ticks;
};

/// Fixed plot-area geometry for a given chart size, exposed so tests can check
/// the coordinate transform.
struct PlotArea {
  double left;
  double right;
  double top;
  double bottom;
};

PlotArea plot_area(const ChartOptions& options);

/// Standalone SVG line chart: one <polyline> per series, axes, ticks and a
/// legend. Output bytes depend only on the inputs. Throws EmptySeries when no
/// series is given or a series has fewer than two points, LengthMismatch when
/// lengths differ.
std::string render_line_chart(std::span<const ChartSeries> series, const std::string& title,
                              const ChartOptions& options = {});

}  // namespace ddosfc::cli

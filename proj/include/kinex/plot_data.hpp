#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kinex/histogram.hpp"

namespace kinex {

// A model density evaluated at the histogram bin centers.
struct Curve {
  std::string name;
  std::vector<double> values;
};

// Column table. Header `x,empirical[,<curve>...]`, one row per bin, every
// number with 9 significant digits, LF line endings. Throws ConfigError when
// a curve does not have one value per bin.
std::string format_plot_data(const Histogram& histogram, const std::vector<Curve>& curves);
void emit_plot_data(const Histogram& histogram, const std::vector<Curve>& curves, const std::string& path);

struct PlotTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

PlotTable parse_plot_data(std::string_view text);

}  // namespace kinex

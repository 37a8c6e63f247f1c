#include "kinex/plot_data.hpp"

#include <charconv>
#include <fstream>

#include "kinex/config.hpp"
#include "kinex/errors.hpp"

namespace kinex {

std::string format_plot_data(const Histogram& histogram, const std::vector<Curve>& curves) {
  for (const auto& c : curves) {
    if (c.values.size() != histogram.bins()) {
      throw ConfigError("curve '" + c.name + "' does not have one value per bin");
    }
  }
  std::string out = "x,empirical";
  for (const auto& c : curves) out += "," + c.name;
  out += "\n";
  for (std::size_t k = 0; k < histogram.bins(); ++k) {
    out += format_sig9(histogram.center(k));
    out += ",";
    out += format_sig9(histogram.densities[k]);
    for (const auto& c : curves) {
      out += ",";
      out += format_sig9(c.values[k]);
    }
    out += "\n";
  }
  return out;
}

void emit_plot_data(const Histogram& histogram, const std::vector<Curve>& curves, const std::string& path) {
  const std::string text = format_plot_data(histogram, curves);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

PlotTable parse_plot_data(std::string_view text) {
  PlotTable table;
  bool header = true;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::size_t s = 0;
    while (true) {
      const auto comma = line.find(',', s);
      cells.push_back(line.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s));
      if (comma == std::string_view::npos) break;
      s = comma + 1;
    }
    if (header) {
      for (auto c : cells) table.columns.emplace_back(c);
      header = false;
      continue;
    }
    if (cells.size() != table.columns.size()) throw ConfigError("plot data row has the wrong column count");
    std::vector<double> row;
    for (auto c : cells) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size()) throw ConfigError("plot data cell is not a number");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace kinex

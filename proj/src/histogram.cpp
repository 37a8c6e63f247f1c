#include "kinex/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kinex/errors.hpp"

namespace kinex {

std::string_view to_string(BinScale scale) {
  return scale == BinScale::linear ? "linear" : "log";
}

BinScale parse_bin_scale(std::string_view name) {
  if (name == "linear") return BinScale::linear;
  if (name == "log") return BinScale::logarithmic;
  throw ConfigError("unknown bin scale '" + std::string(name) + "' (expected linear|log)");
}

double Histogram::center(std::size_t k) const {
  if (scale == BinScale::logarithmic) return std::sqrt(edges[k] * edges[k + 1]);
  return 0.5 * (edges[k] + edges[k + 1]);
}

double sorted_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ConfigError("quantile of an empty sample");
  q = std::clamp(q, 0.0, 1.0);
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

namespace {

// Same interpolation as sorted_quantile, via two partial selections.
double sample_quantile(std::span<const double> samples, double q) {
  std::vector<double> work(samples.begin(), samples.end());
  q = std::clamp(q, 0.0, 1.0);
  const double pos = q * static_cast<double>(work.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(lo), work.end());
  const double a = work[lo];
  if (lo + 1 >= work.size()) return a;
  const double b = *std::min_element(work.begin() + static_cast<std::ptrdiff_t>(lo) + 1, work.end());
  return a + (pos - static_cast<double>(lo)) * (b - a);
}

}  // namespace

Histogram histogram(std::span<const double> samples, const BinSpec& spec) {
  if (samples.empty()) throw ConfigError("histogram needs at least one sample");
  if (spec.count < 2) throw ConfigError("histogram needs at least two bins");
  for (double x : samples) {
    if (!std::isfinite(x)) throw DomainError("histogram samples must be finite");
  }
  const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
  const double smallest = *min_it;
  const double largest = *max_it;
  const bool log_scale = spec.scale == BinScale::logarithmic;

  double lower = spec.lower.value_or(log_scale ? smallest : 0.0);
  if (log_scale && !(lower > 0.0)) throw DomainError("log bins need positive edges");
  double upper = spec.upper ? *spec.upper : sample_quantile(samples, spec.upper_quantile);
  if (log_scale && spec.upper && !(upper > 0.0)) throw DomainError("log bins need positive edges");
  if (smallest < lower) throw DomainError("sample below the histogram range");
  if (!spec.upper && !(upper > lower)) {
    // Degenerate data range; widen so the lone value sits inside the first bins.
    upper = log_scale ? lower * 2.0 : (largest > lower ? largest : lower + 1.0);
  }
  if (!(upper > lower)) throw ConfigError("histogram upper edge must exceed the lower edge");

  Histogram h;
  h.scale = spec.scale;
  h.edges.resize(spec.count + 1);
  const auto n = static_cast<double>(spec.count);
  for (std::size_t k = 0; k <= spec.count; ++k) {
    const double t = static_cast<double>(k) / n;
    h.edges[k] = log_scale ? lower * std::pow(upper / lower, t) : lower + t * (upper - lower);
  }
  h.edges.front() = lower;
  h.edges.back() = upper;
  if (largest > upper) {
    if (!spec.overflow) throw DomainError("sample above the histogram range");
    h.edges.push_back(largest);
  }
  for (std::size_t k = 1; k < h.edges.size(); ++k) {
    if (!(h.edges[k] > h.edges[k - 1])) throw ConfigError("histogram edges are not strictly increasing");
  }

  const std::size_t bins = h.edges.size() - 1;
  h.counts.assign(bins, 0);
  for (double x : samples) {
    // First edge strictly greater than x marks the end of x's bin.
    const auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
    std::size_t k = static_cast<std::size_t>(it - h.edges.begin());
    k = k == 0 ? 0 : k - 1;
    if (k >= bins) k = bins - 1;
    ++h.counts[k];
  }
  h.total_samples = samples.size();
  h.densities.resize(bins);
  const auto total = static_cast<double>(h.total_samples);
  for (std::size_t k = 0; k < bins; ++k) {
    h.densities[k] = static_cast<double>(h.counts[k]) / (total * h.width(k));
  }
  return h;
}

}  // namespace kinex

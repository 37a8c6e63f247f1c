#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace kinex {

enum class BinScale { linear, logarithmic };
std::string_view to_string(BinScale scale);
BinScale parse_bin_scale(std::string_view name);

// Bin layout. Unset bounds are taken from the data: `lower` defaults to 0 for
// linear bins and to the smallest sample for log bins; `upper` defaults to the
// `upper_quantile` sample quantile. With `overflow` set, samples above
// `upper` land in one extra bin ending at the largest sample.
struct BinSpec {
  BinScale scale = BinScale::linear;
  std::size_t count = 50;
  std::optional<double> lower;
  std::optional<double> upper;
  double upper_quantile = 0.999;
  bool overflow = true;
};

// Left-closed bins [e_k, e_k+1); the last bin is closed on both ends.
struct Histogram {
  std::vector<double> edges;
  std::vector<double> densities;
  std::vector<std::uint64_t> counts;
  std::uint64_t total_samples = 0;

  std::size_t bins() const { return counts.size(); }
  double width(std::size_t k) const { return edges[k + 1] - edges[k]; }
  double center(std::size_t k) const;  // geometric mean for log bins
  BinScale scale = BinScale::linear;
};

// Throws ConfigError for an empty sample or fewer than 2 bins, DomainError
// for nonpositive log-bin edges or samples outside the bin range.
Histogram histogram(std::span<const double> samples, const BinSpec& spec = {});

// Linear-interpolated sample quantile of sorted data, q in [0, 1].
double sorted_quantile(std::span<const double> sorted, double q);

}  // namespace kinex

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinex/distributions.hpp"
#include "kinex/histogram.hpp"

namespace kinex {

enum class Mode { exchange, gas, fit, entropy, sweep };
enum class ReportFormat { json, csv };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view name);
std::string_view to_string(ReportFormat format);
ReportFormat parse_report_format(std::string_view name);

// Environment variable consulted for the default output directory.
inline constexpr const char* kOutputDirEnv = "KINEX_OUT_DIR";

// One experiment. Every field maps to exactly one config key and one CLI
// flag of the same name (see config_keys()).
struct ExperimentConfig {
  Mode mode = Mode::exchange;
  double lambda = 0.0;
  std::vector<double> lambdas{0.0, 0.2, 0.5, 0.8};
  std::size_t dimension = 3;
  std::vector<double> dimensions{2.0, 3.0, 6.0, 8.0};
  std::size_t agents = 1000;
  std::uint64_t iterations = 10'000'000;
  std::uint64_t seed = 1;
  std::size_t replicates = 1;
  std::size_t threads = 0;  // 0: min(hardware threads, replicates)
  std::string out;          // empty: $KINEX_OUT_DIR, else "kinex_out"
  ReportFormat format = ReportFormat::json;
  std::size_t bins = 50;
  BinScale bin_scale = BinScale::linear;
  std::optional<double> bin_lower;
  std::optional<double> bin_upper;
  FitMethod fit = FitMethod::moments;
  std::string input;  // sample file for mode=fit
  std::size_t trials = 100;
  double amplitude = 1e-2;
  double beta = 1.0;
  std::size_t lorenz_points = 101;
  bool record_timing = false;

  // Sets one key from its text form. Throws ConfigError for unknown keys or
  // unparsable values.
  void set(std::string_view key, std::string_view value);
  // Checks every value against the preconditions of the module that will
  // consume it. Throws ConfigError or DomainError.
  void validate() const;
  // Canonical (key, value) echo; feeding it back through set() reproduces
  // the config exactly.
  std::vector<std::pair<std::string, std::string>> to_key_values() const;
  std::string resolved_output_dir() const;
  BinSpec bin_spec() const;
};

// Recognised keys, in echo order.
const std::vector<std::string>& config_keys();

// Flat text: one `key = value` per line, `#` starts a comment, blank lines
// ignored. A document whose first non-space character is `{` is read as a
// JSON run report and its "config" object is used instead.
ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

// Shortest round-trip decimal form of a double.
std::string format_double(double value);
// Fixed 9 significant digits (plot data columns).
std::string format_sig9(double value);

}  // namespace kinex

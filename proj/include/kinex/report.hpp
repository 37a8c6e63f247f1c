#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kinex/distributions.hpp"
#include "kinex/entropy.hpp"
#include "kinex/inequality.hpp"

namespace kinex {

struct RngProvenance {
  std::string engine = "mt19937_64";
  std::string seeding = "splitmix64(seed, stream)";
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> streams;
  bool operator==(const RngProvenance&) const = default;
};

struct ShapeCheck {
  double fitted = 0.0;
  double predicted = 0.0;
  double relative_error = 0.0;
  bool operator==(const ShapeCheck&) const = default;
};

// Fitted scale 1/beta against the equipartition value 2 <x> / N.
struct TemperatureCheck {
  double mean = 0.0;
  double dimension = 0.0;
  double predicted = 0.0;
  double fitted = 0.0;
  double relative_error = 0.0;
  bool operator==(const TemperatureCheck&) const = default;
};

struct ReplicateSummary {
  std::uint64_t stream = 0;
  std::size_t snapshots = 0;
  std::uint64_t samples = 0;
  GammaParams fitted;
  double gini = 0.0;
  double total_drift = 0.0;  // |final - initial| / initial of the conserved total
  bool operator==(const ReplicateSummary&) const = default;
};

struct GasConservation {
  double max_collision_energy_error = 0.0;
  double max_collision_momentum_error = 0.0;
  double max_energy_drift = 0.0;    // relative, whole run
  double max_momentum_drift = 0.0;  // absolute, whole run
  bool operator==(const GasConservation&) const = default;
};

struct SweepEntry {
  double lambda = 0.0;
  std::uint64_t samples = 0;
  GammaParams fitted;
  ShapeCheck shape;
  TemperatureCheck temperature;
  double gini = 0.0;
  double gini_predicted = 0.0;  // Gini of the predicted gamma law
  double ks_statistic = 0.0;
  std::string data_file;
  bool operator==(const SweepEntry&) const = default;
};

struct ScalingCheck {
  double dimension = 0.0;
  double amplitude = 0.0;
  // mean margin at `amplitude` over mean margin at amplitude / 2; 4 when quadratic
  double ratio = 0.0;
  bool operator==(const ScalingCheck&) const = default;
};

struct RunReport {
  std::string mode;
  std::vector<std::pair<std::string, std::string>> config;
  RngProvenance rng;
  std::uint64_t samples = 0;
  std::optional<InequalityReport> inequality;
  std::optional<ShapeCheck> shape;
  std::optional<TemperatureCheck> temperature;
  std::vector<ReplicateSummary> replicates;
  std::optional<GasConservation> conservation;
  std::vector<SweepEntry> sweep;
  std::vector<StationarityReport> stationarity;
  std::vector<ScalingCheck> scaling;
  std::optional<MaxwellBoltzmannReport> maxwell_boltzmann;
  std::vector<std::string> files;
  std::optional<double> duration_seconds;
  bool operator==(const RunReport&) const = default;
};

// JSON text, two-space indented, keys in fixed order, doubles in shortest
// round-trip form. parse_report_json(report_to_json(r)) == r.
std::string report_to_json(const RunReport& report);
RunReport parse_report_json(const std::string& text);

// Flattened "key,value" rows (array elements as key.index), export only.
std::string report_to_csv(const RunReport& report);

}  // namespace kinex

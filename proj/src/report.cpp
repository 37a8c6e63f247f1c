#include "kinex/report.hpp"

#include <json.hpp>

#include "kinex/config.hpp"
#include "kinex/errors.hpp"

namespace kinex {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json to_j(const GammaParams& p) { return {{"shape", p.shape}, {"rate", p.rate}}; }
GammaParams gamma_from(const ordered_json& j) { return {j.at("shape").get<double>(), j.at("rate").get<double>()}; }

ordered_json to_j(const ShapeCheck& s) {
  return {{"fitted", s.fitted}, {"predicted", s.predicted}, {"relative_error", s.relative_error}};
}
ShapeCheck shape_from(const ordered_json& j) {
  return {j.at("fitted").get<double>(), j.at("predicted").get<double>(), j.at("relative_error").get<double>()};
}

ordered_json to_j(const TemperatureCheck& t) {
  return {{"mean", t.mean},           {"dimension", t.dimension}, {"predicted", t.predicted},
          {"fitted", t.fitted},       {"relative_error", t.relative_error}};
}
TemperatureCheck temperature_from(const ordered_json& j) {
  return {j.at("mean").get<double>(), j.at("dimension").get<double>(), j.at("predicted").get<double>(),
          j.at("fitted").get<double>(), j.at("relative_error").get<double>()};
}

ordered_json to_j(const InequalityReport& r) {
  ordered_json lorenz = ordered_json::array();
  for (const auto& p : r.lorenz) lorenz.push_back({p.population, p.wealth});
  return {{"gini", r.gini}, {"fitted", to_j(r.fitted)}, {"ks_statistic", r.ks_statistic}, {"lorenz", lorenz}};
}
InequalityReport inequality_from(const ordered_json& j) {
  InequalityReport r;
  r.gini = j.at("gini").get<double>();
  r.fitted = gamma_from(j.at("fitted"));
  r.ks_statistic = j.at("ks_statistic").get<double>();
  for (const auto& p : j.at("lorenz")) r.lorenz.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return r;
}

ordered_json to_j(const StationarityReport& s) {
  return {{"dimension", s.dimension},   {"beta", s.beta},           {"amplitude", s.amplitude},
          {"trials", s.trials},         {"resampled", s.resampled}, {"min_margin", s.min_margin},
          {"mean_margin", s.mean_margin}, {"max_margin", s.max_margin}, {"margins", s.margins}};
}
StationarityReport stationarity_from(const ordered_json& j) {
  StationarityReport s;
  s.dimension = j.at("dimension").get<double>();
  s.beta = j.at("beta").get<double>();
  s.amplitude = j.at("amplitude").get<double>();
  s.trials = j.at("trials").get<std::size_t>();
  s.resampled = j.at("resampled").get<std::size_t>();
  s.min_margin = j.at("min_margin").get<double>();
  s.mean_margin = j.at("mean_margin").get<double>();
  s.max_margin = j.at("max_margin").get<double>();
  s.margins = j.at("margins").get<std::vector<double>>();
  return s;
}

ordered_json to_json_doc(const RunReport& r) {
  ordered_json doc;
  doc["mode"] = r.mode;
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  doc["config"] = config;
  doc["rng"] = {{"engine", r.rng.engine}, {"seeding", r.rng.seeding}, {"seed", r.rng.seed}, {"streams", r.rng.streams}};
  doc["samples"] = r.samples;
  if (r.inequality) doc["inequality"] = to_j(*r.inequality);
  if (r.shape) doc["shape"] = to_j(*r.shape);
  if (r.temperature) doc["temperature"] = to_j(*r.temperature);
  if (!r.replicates.empty()) {
    ordered_json reps = ordered_json::array();
    for (const auto& s : r.replicates) {
      reps.push_back({{"stream", s.stream},           {"snapshots", s.snapshots}, {"samples", s.samples},
                      {"fitted", to_j(s.fitted)},     {"gini", s.gini},           {"total_drift", s.total_drift}});
    }
    doc["replicates"] = reps;
  }
  if (r.conservation) {
    const auto& c = *r.conservation;
    doc["conservation"] = {{"max_collision_energy_error", c.max_collision_energy_error},
                           {"max_collision_momentum_error", c.max_collision_momentum_error},
                           {"max_energy_drift", c.max_energy_drift},
                           {"max_momentum_drift", c.max_momentum_drift}};
  }
  if (!r.sweep.empty()) {
    ordered_json sweep = ordered_json::array();
    for (const auto& e : r.sweep) {
      sweep.push_back({{"lambda", e.lambda},
                       {"samples", e.samples},
                       {"fitted", to_j(e.fitted)},
                       {"shape", to_j(e.shape)},
                       {"temperature", to_j(e.temperature)},
                       {"gini", e.gini},
                       {"gini_predicted", e.gini_predicted},
                       {"ks_statistic", e.ks_statistic},
                       {"data_file", e.data_file}});
    }
    doc["sweep"] = sweep;
  }
  if (!r.stationarity.empty()) {
    ordered_json st = ordered_json::array();
    for (const auto& s : r.stationarity) st.push_back(to_j(s));
    doc["stationarity"] = st;
  }
  if (!r.scaling.empty()) {
    ordered_json sc = ordered_json::array();
    for (const auto& s : r.scaling) {
      sc.push_back({{"dimension", s.dimension}, {"amplitude", s.amplitude}, {"ratio", s.ratio}});
    }
    doc["scaling"] = sc;
  }
  if (r.maxwell_boltzmann) {
    const auto& m = *r.maxwell_boltzmann;
    doc["maxwell_boltzmann"] = {{"beta", m.beta},
                                {"points", m.points},
                                {"max_abs_difference", m.max_abs_difference},
                                {"quadrature_mean", m.quadrature_mean},
                                {"expected_mean", m.expected_mean}};
  }
  doc["files"] = r.files;
  if (r.duration_seconds) doc["duration_seconds"] = *r.duration_seconds;
  return doc;
}

void flatten(const ordered_json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    std::string value;
    if (j.is_string()) {
      value = j.get<std::string>();
      if (value.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : value) {
          if (c == '"') quoted += '"';
          quoted += c;
        }
        value = quoted + "\"";
      }
    } else if (j.is_number_float()) {
      value = format_double(j.get<double>());
    } else {
      value = j.dump();
    }
    out += prefix + "," + value + "\n";
  }
}

}  // namespace

std::string report_to_json(const RunReport& report) { return to_json_doc(report).dump(2) + "\n"; }

RunReport parse_report_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report does not parse: ") + e.what());
  }
  try {
    RunReport r;
    r.mode = doc.at("mode").get<std::string>();
    for (const auto& [k, v] : doc.at("config").items()) r.config.emplace_back(k, v.get<std::string>());
    const auto& rng = doc.at("rng");
    r.rng.engine = rng.at("engine").get<std::string>();
    r.rng.seeding = rng.at("seeding").get<std::string>();
    r.rng.seed = rng.at("seed").get<std::uint64_t>();
    r.rng.streams = rng.at("streams").get<std::vector<std::uint64_t>>();
    r.samples = doc.at("samples").get<std::uint64_t>();
    if (doc.contains("inequality")) r.inequality = inequality_from(doc["inequality"]);
    if (doc.contains("shape")) r.shape = shape_from(doc["shape"]);
    if (doc.contains("temperature")) r.temperature = temperature_from(doc["temperature"]);
    if (doc.contains("replicates")) {
      for (const auto& s : doc["replicates"]) {
        r.replicates.push_back({s.at("stream").get<std::uint64_t>(), s.at("snapshots").get<std::size_t>(),
                                s.at("samples").get<std::uint64_t>(), gamma_from(s.at("fitted")),
                                s.at("gini").get<double>(), s.at("total_drift").get<double>()});
      }
    }
    if (doc.contains("conservation")) {
      const auto& c = doc["conservation"];
      r.conservation = GasConservation{c.at("max_collision_energy_error").get<double>(),
                                       c.at("max_collision_momentum_error").get<double>(),
                                       c.at("max_energy_drift").get<double>(),
                                       c.at("max_momentum_drift").get<double>()};
    }
    if (doc.contains("sweep")) {
      for (const auto& e : doc["sweep"]) {
        SweepEntry s;
        s.lambda = e.at("lambda").get<double>();
        s.samples = e.at("samples").get<std::uint64_t>();
        s.fitted = gamma_from(e.at("fitted"));
        s.shape = shape_from(e.at("shape"));
        s.temperature = temperature_from(e.at("temperature"));
        s.gini = e.at("gini").get<double>();
        s.gini_predicted = e.at("gini_predicted").get<double>();
        s.ks_statistic = e.at("ks_statistic").get<double>();
        s.data_file = e.at("data_file").get<std::string>();
        r.sweep.push_back(std::move(s));
      }
    }
    if (doc.contains("stationarity")) {
      for (const auto& s : doc["stationarity"]) r.stationarity.push_back(stationarity_from(s));
    }
    if (doc.contains("scaling")) {
      for (const auto& s : doc["scaling"]) {
        r.scaling.push_back({s.at("dimension").get<double>(), s.at("amplitude").get<double>(),
                             s.at("ratio").get<double>()});
      }
    }
    if (doc.contains("maxwell_boltzmann")) {
      const auto& m = doc["maxwell_boltzmann"];
      r.maxwell_boltzmann = MaxwellBoltzmannReport{m.at("beta").get<double>(), m.at("points").get<std::size_t>(),
                                                   m.at("max_abs_difference").get<double>(),
                                                   m.at("quadrature_mean").get<double>(),
                                                   m.at("expected_mean").get<double>()};
    }
    r.files = doc.at("files").get<std::vector<std::string>>();
    if (doc.contains("duration_seconds")) r.duration_seconds = doc["duration_seconds"].get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report is missing fields: ") + e.what());
  }
}

std::string report_to_csv(const RunReport& report) {
  std::string out = "key,value\n";
  flatten(to_json_doc(report), "", out);
  return out;
}

}  // namespace kinex

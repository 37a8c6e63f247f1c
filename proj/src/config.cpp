#include "kinex/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "kinex/errors.hpp"

namespace kinex {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) +
                    "' (expected " + std::string(expected) + ")");
}

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    bad_value(key, text, "a finite number");
  }
  return v;
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size()) return v;
  // Accept integral scientific notation such as 1e7.
  const double d = parse_real(key, text);
  if (d < 0.0 || d != std::floor(d) || d > 9.0e15) bad_value(key, text, "a nonnegative integer");
  return static_cast<std::uint64_t>(d);
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                               : comma - start));
    if (item.empty()) bad_value(key, text, "a comma-separated list of numbers");
    out.push_back(parse_real(key, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  bad_value(key, text, "true|false");
}

std::optional<double> parse_optional_real(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text.empty() || text == "auto") return std::nullopt;
  return parse_real(key, text);
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += format_double(xs[i]);
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::exchange: return "exchange";
    case Mode::gas: return "gas";
    case Mode::fit: return "fit";
    case Mode::entropy: return "entropy";
    case Mode::sweep: return "sweep";
  }
  return "exchange";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::exchange, Mode::gas, Mode::fit, Mode::entropy, Mode::sweep}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected exchange|gas|fit|entropy|sweep)");
}

std::string_view to_string(ReportFormat format) { return format == ReportFormat::json ? "json" : "csv"; }

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw ConfigError("unknown report format '" + std::string(name) + "' (expected json|csv)");
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string format_sig9(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 9);
  return std::string(buf.data(), ptr);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "mode",      "lambda",     "lambdas",   "dimension", "dimensions", "agents",
      "iterations", "seed",      "replicates", "threads",  "out",        "format",
      "bins",      "bin_scale",  "bin_lower", "bin_upper", "fit",        "input",
      "trials",    "amplitude",  "beta",      "lorenz_points", "record_timing"};
  return keys;
}

void ExperimentConfig::set(std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (key == "mode") mode = parse_mode(value);
  else if (key == "lambda") lambda = parse_real(key, value);
  else if (key == "lambdas") lambdas = parse_list(key, value);
  else if (key == "dimension") dimension = parse_count(key, value);
  else if (key == "dimensions") dimensions = parse_list(key, value);
  else if (key == "agents") agents = parse_count(key, value);
  else if (key == "iterations") iterations = parse_count(key, value);
  else if (key == "seed") seed = parse_count(key, value);
  else if (key == "replicates") replicates = parse_count(key, value);
  else if (key == "threads") threads = parse_count(key, value);
  else if (key == "out") out = std::string(value);
  else if (key == "format") format = parse_report_format(value);
  else if (key == "bins") bins = parse_count(key, value);
  else if (key == "bin_scale") bin_scale = parse_bin_scale(value);
  else if (key == "bin_lower") bin_lower = parse_optional_real(key, value);
  else if (key == "bin_upper") bin_upper = parse_optional_real(key, value);
  else if (key == "fit") fit = parse_fit_method(value);
  else if (key == "input") input = std::string(value);
  else if (key == "trials") trials = parse_count(key, value);
  else if (key == "amplitude") amplitude = parse_real(key, value);
  else if (key == "beta") beta = parse_real(key, value);
  else if (key == "lorenz_points") lorenz_points = parse_count(key, value);
  else if (key == "record_timing") record_timing = parse_bool(key, value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void ExperimentConfig::validate() const {
  auto check_lambda = [](double l) {
    if (!(l >= 0.0 && l < 1.0)) throw ConfigError("lambda must lie in [0, 1), got " + format_double(l));
  };
  if (agents < 2) throw ConfigError("agents must be at least 2");
  if (replicates < 1) throw ConfigError("replicates must be at least 1");
  if (bins < 2) throw ConfigError("bins must be at least 2");
  if (lorenz_points < 2) throw ConfigError("lorenz_points must be at least 2");
  if (bin_scale == BinScale::logarithmic) {
    if (bin_lower && !(*bin_lower > 0.0)) throw ConfigError("log bins need a positive bin_lower");
    if (bin_upper && !(*bin_upper > 0.0)) throw ConfigError("log bins need a positive bin_upper");
  }
  if (bin_lower && bin_upper && !(*bin_upper > *bin_lower)) {
    throw ConfigError("bin_upper must exceed bin_lower");
  }
  switch (mode) {
    case Mode::exchange:
      check_lambda(lambda);
      break;
    case Mode::sweep:
      if (lambdas.empty()) throw ConfigError("sweep needs at least one lambda");
      for (double l : lambdas) check_lambda(l);
      break;
    case Mode::gas:
      if (dimension < 1) throw ConfigError("dimension must be at least 1");
      break;
    case Mode::fit:
      if (input.empty()) throw ConfigError("fit mode needs an input sample file (key 'input')");
      break;
    case Mode::entropy:
      if (dimensions.empty()) throw ConfigError("entropy mode needs at least one dimension");
      for (double n : dimensions) {
        if (!(n >= 1.0)) throw ConfigError("dimensions must be >= 1");
      }
      if (trials < 10) throw ConfigError("trials must be at least 10");
      if (!(amplitude > 0.0 && amplitude <= 1e-2)) throw ConfigError("amplitude must lie in (0, 1e-2]");
      if (!(beta > 0.0)) throw ConfigError("beta must be positive");
      break;
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::to_key_values() const {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("auto"); };
  return {
      {"mode", std::string(to_string(mode))},
      {"lambda", format_double(lambda)},
      {"lambdas", join(lambdas)},
      {"dimension", std::to_string(dimension)},
      {"dimensions", join(dimensions)},
      {"agents", std::to_string(agents)},
      {"iterations", std::to_string(iterations)},
      {"seed", std::to_string(seed)},
      {"replicates", std::to_string(replicates)},
      {"threads", std::to_string(threads)},
      {"out", out},
      {"format", std::string(to_string(format))},
      {"bins", std::to_string(bins)},
      {"bin_scale", std::string(to_string(bin_scale))},
      {"bin_lower", opt(bin_lower)},
      {"bin_upper", opt(bin_upper)},
      {"fit", std::string(to_string(fit))},
      {"input", input},
      {"trials", std::to_string(trials)},
      {"amplitude", format_double(amplitude)},
      {"beta", format_double(beta)},
      {"lorenz_points", std::to_string(lorenz_points)},
      {"record_timing", record_timing ? "true" : "false"},
  };
}

std::string ExperimentConfig::resolved_output_dir() const {
  if (!out.empty()) return out;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return "kinex_out";
}

BinSpec ExperimentConfig::bin_spec() const {
  BinSpec spec;
  spec.scale = bin_scale;
  spec.count = bins;
  spec.lower = bin_lower;
  spec.upper = bin_upper;
  return spec;
}

ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base) {
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config JSON does not parse: ") + e.what());
    }
    if (!doc.contains("config") || !doc["config"].is_object()) {
      throw ConfigError("JSON config must carry a \"config\" object");
    }
    for (const auto& [key, value] : doc["config"].items()) {
      if (!value.is_string()) throw ConfigError("config value for '" + key + "' must be a string");
      base.set(key, value.get<std::string>());
    }
    return base;
  }

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    base.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  return parse_config_text(read_file(path), std::move(base));
}

}  // namespace kinex

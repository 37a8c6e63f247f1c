#include "kinex/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "kinex/errors.hpp"
#include "kinex/exchange.hpp"
#include "kinex/gas.hpp"
#include "kinex/histogram.hpp"
#include "kinex/plot_data.hpp"

namespace kinex {
namespace {

namespace fs = std::filesystem;

double relative_error(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

std::vector<double> pdf_at_centers(const Histogram& h, const GammaParams& p) {
  std::vector<double> out(h.bins());
  for (std::size_t k = 0; k < h.bins(); ++k) out[k] = gamma_pdf(h.center(k), p);
  return out;
}

std::string lorenz_csv(const std::vector<LorenzPoint>& points) {
  std::string out = "population,wealth\n";
  for (const auto& p : points) out += format_sig9(p.population) + "," + format_sig9(p.wealth) + "\n";
  return out;
}

std::string render_report(const RunReport& report, ReportFormat format) {
  return format == ReportFormat::json ? report_to_json(report) : report_to_csv(report);
}

std::string report_name(const ExperimentConfig& config) {
  return std::string(to_string(config.mode)) + "." + std::string(to_string(config.format));
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

TemperatureCheck temperature_check(double mean, double dimension, const GammaParams& fitted) {
  TemperatureCheck t;
  t.mean = mean;
  t.dimension = dimension;
  t.predicted = effective_temperature(mean, dimension);
  t.fitted = 1.0 / fitted.rate;
  t.relative_error = relative_error(t.fitted, t.predicted);
  return t;
}

struct PooledExchange {
  std::vector<double> values;
  std::vector<ReplicateSummary> replicates;
};

PooledExchange run_exchange_replicates(const ExperimentConfig& config, double lambda,
                                       std::uint64_t first_stream) {
  std::vector<WealthSnapshots> runs(config.replicates);
  run_parallel(config.replicates, config.threads, [&](std::size_t r) {
    ExchangeParams params{lambda, config.iterations, config.seed, first_stream + r};
    runs[r] = sample_exchange(config.agents, params);
  });
  PooledExchange pooled;
  std::size_t total = 0;
  for (const auto& run : runs) total += run.values.size();
  pooled.values.reserve(total);
  for (auto& run : runs) {
    ReplicateSummary s;
    s.stream = run.stream;
    s.snapshots = run.snapshots;
    s.samples = run.values.size();
    s.fitted = fit_gamma(run.values, config.fit);
    s.gini = gini(run.values);
    s.total_drift = relative_error(run.final_total, run.initial_total);
    pooled.replicates.push_back(s);
    pooled.values.insert(pooled.values.end(), run.values.begin(), run.values.end());
    run.values = {};
  }
  return pooled;
}

void fill_common(RunReport& report, const ExperimentConfig& config) {
  report.mode = std::string(to_string(config.mode));
  report.config = config.to_key_values();
  report.rng.seed = config.seed;
}

void run_exchange_mode(const ExperimentConfig& config, ExperimentResult& result) {
  RunReport& report = result.report;
  PooledExchange pooled = run_exchange_replicates(config, config.lambda, 0);
  for (const auto& s : pooled.replicates) report.rng.streams.push_back(s.stream);
  report.samples = pooled.values.size();
  report.replicates = pooled.replicates;
  report.inequality = inequality_report(pooled.values, config.fit, config.lorenz_points);

  const double mean = mean_of(pooled.values);
  const double n = effective_shape(config.lambda);
  const GammaParams fitted = report.inequality->fitted;
  const GammaParams predicted{n, n / mean};
  report.shape = ShapeCheck{fitted.shape, n, relative_error(fitted.shape, n)};
  report.temperature = temperature_check(mean, effective_dimension(config.lambda), fitted);

  const Histogram h = histogram(pooled.values, config.bin_spec());
  result.files.push_back({"exchange_histogram.csv",
                          format_plot_data(h, {{"fitted", pdf_at_centers(h, fitted)},
                                               {"predicted", pdf_at_centers(h, predicted)}})});
  result.files.push_back({"exchange_lorenz.csv", lorenz_csv(report.inequality->lorenz)});
}

void run_gas_mode(const ExperimentConfig& config, ExperimentResult& result) {
  RunReport& report = result.report;
  std::vector<EnergySnapshots> runs(config.replicates);
  run_parallel(config.replicates, config.threads, [&](std::size_t r) {
    runs[r] = sample_gas(config.agents, config.dimension, config.iterations, config.seed, r, 1.0, true);
  });
  std::vector<double> pooled;
  GasConservation conservation;
  for (auto& run : runs) {
    report.rng.streams.push_back(run.stream);
    ReplicateSummary s;
    s.stream = run.stream;
    s.snapshots = run.snapshots;
    s.samples = run.values.size();
    s.fitted = fit_gamma(run.values, config.fit);
    s.gini = gini(run.values);
    s.total_drift = relative_error(run.final_energy, run.initial_energy);
    report.replicates.push_back(s);
    conservation.max_collision_energy_error =
        std::max(conservation.max_collision_energy_error, run.stats.max_collision_energy_error);
    conservation.max_collision_momentum_error =
        std::max(conservation.max_collision_momentum_error, run.stats.max_collision_momentum_error);
    conservation.max_energy_drift = std::max(conservation.max_energy_drift, s.total_drift);
    conservation.max_momentum_drift = std::max(conservation.max_momentum_drift, run.momentum_drift);
    pooled.insert(pooled.end(), run.values.begin(), run.values.end());
    run.values = {};
  }
  report.conservation = conservation;
  report.samples = pooled.size();
  report.inequality = inequality_report(pooled, config.fit, config.lorenz_points);

  const double mean = mean_of(pooled);
  const double n = 0.5 * static_cast<double>(config.dimension);
  const GammaParams fitted = report.inequality->fitted;
  const GammaParams predicted{n, n / mean};
  report.shape = ShapeCheck{fitted.shape, n, relative_error(fitted.shape, n)};
  if (config.dimension >= 2) {
    report.temperature = temperature_check(mean, static_cast<double>(config.dimension), fitted);
  }

  const Histogram h = histogram(pooled, config.bin_spec());
  result.files.push_back({"gas_histogram.csv",
                          format_plot_data(h, {{"fitted", pdf_at_centers(h, fitted)},
                                               {"predicted", pdf_at_centers(h, predicted)}})});
}

void run_fit_mode(const ExperimentConfig& config, ExperimentResult& result) {
  std::ifstream in(config.input, std::ios::binary);
  if (!in) throw ConfigError("cannot read sample file '" + config.input + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::vector<double> samples = parse_samples(ss.str());

  RunReport& report = result.report;
  report.samples = samples.size();
  report.inequality = inequality_report(samples, config.fit, config.lorenz_points);
  const GammaParams fitted = report.inequality->fitted;
  const Histogram h = histogram(samples, config.bin_spec());
  result.files.push_back({"fit_histogram.csv", format_plot_data(h, {{"fitted", pdf_at_centers(h, fitted)}})});
  result.files.push_back({"fit_lorenz.csv", lorenz_csv(report.inequality->lorenz)});
}

void run_entropy_mode(const ExperimentConfig& config, ExperimentResult& result) {
  RunReport& report = result.report;
  std::vector<StationarityReport> full(config.dimensions.size());
  std::vector<StationarityReport> half(config.dimensions.size());
  run_parallel(config.dimensions.size(), config.threads, [&](std::size_t i) {
    const double n = config.dimensions[i];
    full[i] = stationarity_check(n, config.beta, config.trials, config.amplitude, config.seed);
    half[i] = stationarity_check(n, config.beta, config.trials, 0.5 * config.amplitude, config.seed);
  });
  for (std::size_t i = 0; i < full.size(); ++i) {
    report.scaling.push_back({config.dimensions[i], config.amplitude, full[i].mean_margin / half[i].mean_margin});
    report.stationarity.push_back(std::move(full[i]));
    report.stationarity.push_back(std::move(half[i]));
  }
  report.rng.streams = {0};
  report.maxwell_boltzmann = maxwell_boltzmann_check(config.beta);
}

void run_sweep_mode(const ExperimentConfig& config, ExperimentResult& result) {
  RunReport& report = result.report;
  std::vector<GammaParams> predicted_laws;
  double x_top = 0.0;
  for (std::size_t li = 0; li < config.lambdas.size(); ++li) {
    const double lambda = config.lambdas[li];
    PooledExchange pooled = run_exchange_replicates(config, lambda, li * config.replicates);
    for (const auto& s : pooled.replicates) report.rng.streams.push_back(s.stream);
    const InequalityReport ineq = inequality_report(pooled.values, config.fit, 2);

    const double mean = mean_of(pooled.values);
    const double n = effective_shape(lambda);
    const GammaParams predicted{n, n / mean};
    predicted_laws.push_back(predicted);

    SweepEntry e;
    e.lambda = lambda;
    e.samples = pooled.values.size();
    e.fitted = ineq.fitted;
    e.shape = ShapeCheck{ineq.fitted.shape, n, relative_error(ineq.fitted.shape, n)};
    e.temperature = temperature_check(mean, effective_dimension(lambda), ineq.fitted);
    e.gini = ineq.gini;
    e.gini_predicted = gini_of_gamma(n);
    e.ks_statistic = ineq.ks_statistic;
    e.data_file = "sweep_lambda_" + format_double(lambda) + ".csv";

    const Histogram h = histogram(pooled.values, config.bin_spec());
    x_top = std::max(x_top, h.edges.back());
    result.files.push_back({e.data_file, format_plot_data(h, {{"fitted", pdf_at_centers(h, ineq.fitted)},
                                                             {"predicted", pdf_at_centers(h, predicted)}})});
    report.samples += e.samples;
    report.sweep.push_back(std::move(e));
  }

  // Overlay: predicted gamma curves for every lambda on one shared grid.
  constexpr std::size_t kCurvePoints = 200;
  std::string overlay = "x";
  for (double l : config.lambdas) overlay += ",lambda_" + format_double(l);
  overlay += "\n";
  for (std::size_t i = 1; i <= kCurvePoints; ++i) {
    const double x = x_top * static_cast<double>(i) / static_cast<double>(kCurvePoints);
    overlay += format_sig9(x);
    for (const auto& p : predicted_laws) overlay += "," + format_sig9(gamma_pdf(x, p));
    overlay += "\n";
  }
  result.files.push_back({"sweep_curves.csv", std::move(overlay)});
}

}  // namespace

void run_parallel(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task) {
  if (count == 0) return;
  std::size_t workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  std::vector<std::exception_ptr> errors(count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    pool.clear();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> parse_samples(std::string_view text) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',') {
      ++i;
      continue;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc() || !std::isfinite(v)) {
      throw ConfigError("sample file: unparsable value near offset " + std::to_string(i));
    }
    out.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
    if (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == '\r' || text[i] == '\n' ||
                             text[i] == ',' || text[i] == '#')) {
      throw ConfigError("sample file: unparsable value near offset " + std::to_string(i));
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  fill_common(result.report, config);
  switch (config.mode) {
    case Mode::exchange: run_exchange_mode(config, result); break;
    case Mode::gas: run_gas_mode(config, result); break;
    case Mode::fit: run_fit_mode(config, result); break;
    case Mode::entropy: run_entropy_mode(config, result); break;
    case Mode::sweep: run_sweep_mode(config, result); break;
  }
  result.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  // Wall-clock time breaks byte-identical reruns, so it is opt-in.
  if (config.record_timing) result.report.duration_seconds = result.duration_seconds;

  const std::string name = report_name(config);
  for (const auto& f : result.files) result.report.files.push_back(f.name);
  result.report.files.push_back(name);
  result.files.push_back({name, render_report(result.report, config.format)});
  return result;
}

void write_outputs(const std::string& dir, const std::vector<OutputFile>& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());

  std::vector<fs::path> staged;
  std::vector<fs::path> committed;
  auto roll_back = [&] {
    std::error_code ignore;
    for (const auto& p : staged) fs::remove(p, ignore);
    for (const auto& p : committed) fs::remove(p, ignore);
  };
  try {
    for (const auto& f : files) {
      const fs::path tmp = fs::path(dir) / (f.name + ".tmp");
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw ConfigError("cannot open '" + tmp.string() + "' for writing");
      staged.push_back(tmp);
      out << f.contents;
      out.close();
      if (!out) throw ConfigError("failed writing '" + tmp.string() + "'");
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      const fs::path target = fs::path(dir) / files[i].name;
      fs::rename(staged[i], target);
      committed.push_back(target);
      staged[i].clear();
    }
  } catch (const fs::filesystem_error& e) {
    roll_back();
    throw ConfigError(std::string("writing outputs failed: ") + e.what());
  } catch (...) {
    roll_back();
    throw;
  }
}

}  // namespace kinex

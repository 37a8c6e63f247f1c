// kinex: command-line runner for the wealth-exchange and gas experiments.
//
//   kinex exchange --lambda 0.5 --agents 1000 --iterations 1e7 --seed 7 --out run1
//   kinex sweep --lambdas 0,0.2,0.5,0.8 --replicates 4
//   kinex gas --dimension 3
//   kinex fit --input samples.txt
//   kinex entropy --dimensions 2,3,6,8
//
// Every config key has a flag of the same name. `--config FILE` loads a flat
// key = value file (or a previous JSON report) first; flags override it.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>

#include "kinex/config.hpp"
#include "kinex/errors.hpp"
#include "kinex/experiment.hpp"

namespace {

int fail(const std::string& kind, const std::string& message, int code) {
  nlohmann::ordered_json err;
  err["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << err.dump() << "\n";
  return code;
}

void print_summary(const kinex::ExperimentResult& result, const std::string& dir) {
  const auto& r = result.report;
  std::cout << "mode " << r.mode << ": " << r.samples << " samples, " << result.duration_seconds << " s\n";
  if (r.shape) {
    std::cout << "  shape fitted " << r.shape->fitted << " predicted " << r.shape->predicted
              << " (rel. error " << r.shape->relative_error << ")\n";
  }
  if (r.inequality) {
    std::cout << "  gini " << r.inequality->gini << "  ks " << r.inequality->ks_statistic << "\n";
  }
  for (const auto& e : r.sweep) {
    std::cout << "  lambda " << e.lambda << ": shape " << e.shape.fitted << " / " << e.shape.predicted
              << "  gini " << e.gini << " (gamma " << e.gini_predicted << ")\n";
  }
  for (const auto& s : r.scaling) {
    std::cout << "  N " << s.dimension << ": amplitude-halving margin ratio " << s.ratio << "\n";
  }
  for (const auto& s : r.stationarity) {
    std::cout << "  N " << s.dimension << " amplitude " << s.amplitude << ": min margin " << s.min_margin << "\n";
  }
  for (const auto& f : r.files) std::cout << "  wrote " << dir << "/" << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic wealth-exchange and N-dimensional gas experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kinex 1.0.0");

  const std::map<std::string, std::string> help{
      {"lambda", "saving propensity in [0, 1)"},
      {"lambdas", "comma-separated saving propensities (sweep)"},
      {"dimension", "gas dimension N (gas)"},
      {"dimensions", "comma-separated dimensions (entropy)"},
      {"agents", "agents or particles M"},
      {"iterations", "trades or collisions per replicate"},
      {"seed", "master RNG seed"},
      {"replicates", "independent replicates, pooled before fitting"},
      {"threads", "worker threads (0: auto)"},
      {"out", "output directory (default $KINEX_OUT_DIR or kinex_out)"},
      {"format", "report format json|csv"},
      {"bins", "histogram bins"},
      {"bin_scale", "linear|log"},
      {"bin_lower", "lower histogram edge or auto"},
      {"bin_upper", "upper histogram edge or auto"},
      {"fit", "gamma fit moments|mle"},
      {"input", "sample file (fit)"},
      {"trials", "perturbations per dimension (entropy)"},
      {"amplitude", "relative perturbation amplitude (entropy)"},
      {"beta", "inverse temperature (entropy)"},
      {"lorenz_points", "Lorenz curve vertices in the report"},
      {"record_timing", "store wall-clock duration in the report"},
  };

  std::map<std::string, std::optional<std::string>> overrides;
  std::optional<std::string> config_path;
  std::string chosen;
  for (const char* name : {"exchange", "gas", "fit", "entropy", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", config_path, "flat key = value file or JSON report");
    for (const auto& key : kinex::config_keys()) {
      if (key == "mode") continue;
      sub->add_option("--" + key, overrides[key], help.at(key));
    }
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what(), 2);
  }

  kinex::ExperimentConfig config;
  try {
    if (config_path) config = kinex::load_config_file(*config_path);
    config.mode = kinex::parse_mode(chosen);
    for (const auto& key : kinex::config_keys()) {
      if (key == "mode") continue;
      if (const auto& v = overrides[key]) config.set(key, *v);
    }
    config.validate();
  } catch (const std::exception& e) {
    return fail("config", e.what(), 2);
  }

  try {
    const kinex::ExperimentResult result = kinex::run_experiment(config);
    const std::string dir = config.resolved_output_dir();
    kinex::write_outputs(dir, result.files);
    print_summary(result, dir);
  } catch (const kinex::ConfigError& e) {
    return fail("config", e.what(), 2);
  } catch (const kinex::DomainError& e) {
    return fail("domain", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("runtime", e.what(), 1);
  }
  return 0;
}

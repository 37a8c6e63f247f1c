#include "kinex/exchange.hpp"

#include <cmath>
#include <string>

#include "kinex/errors.hpp"

namespace kinex {
namespace {

void check_wealth(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be a finite nonnegative wealth");
  }
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw DomainError("saving propensity must lie in [0, 1)");
  }
}

double kahan_sum(std::span<const double> xs) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : xs) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

WealthEnsemble::WealthEnsemble(std::vector<double> wealths) : wealths_(std::move(wealths)) {
  if (wealths_.size() < 2) throw ConfigError("an ensemble needs at least two agents");
  for (double x : wealths_) check_wealth(x, "agent wealth");
  total_ = kahan_sum(wealths_);
}

WealthEnsemble WealthEnsemble::uniform(std::size_t agents, double wealth) {
  check_wealth(wealth, "initial wealth");
  if (agents < 2) throw ConfigError("an ensemble needs at least two agents");
  return WealthEnsemble(std::vector<double>(agents, wealth));
}

double WealthEnsemble::recomputed_total() const { return kahan_sum(wealths_); }

void WealthEnsemble::trade(std::size_t i, std::size_t j, double lambda, double eps) noexcept {
  const double pool = (1.0 - lambda) * (wealths_[i] + wealths_[j]);
  const double to_i = eps * pool;
  wealths_[i] = lambda * wealths_[i] + to_i;
  wealths_[j] = lambda * wealths_[j] + (pool - to_i);
}

void ExchangeParams::validate() const { check_lambda(lambda); }

std::pair<double, double> trade_dy(double xi, double xj, double eps) {
  check_wealth(xi, "xi");
  check_wealth(xj, "xj");
  check_eps(eps);
  const double sum = xi + xj;
  const double to_i = eps * sum;
  return {to_i, sum - to_i};
}

std::pair<double, double> trade_cc(double xi, double xj, double lambda, double eps) {
  check_wealth(xi, "xi");
  check_wealth(xj, "xj");
  check_lambda(lambda);
  check_eps(eps);
  const double pool = (1.0 - lambda) * (xi + xj);
  const double to_i = eps * pool;
  return {lambda * xi + to_i, lambda * xj + (pool - to_i)};
}

void run_exchange(WealthEnsemble& ensemble, double lambda, std::uint64_t trades, Rng& rng) {
  check_lambda(lambda);
  const std::size_t m = ensemble.size();
  for (std::uint64_t t = 0; t < trades; ++t) {
    const auto [i, j] = rng.distinct_pair(m);
    ensemble.trade(i, j, lambda, rng.uniform_open());
  }
}

WealthEnsemble run_exchange(WealthEnsemble ensemble, const ExchangeParams& params) {
  params.validate();
  Rng rng(params.seed, params.stream);
  run_exchange(ensemble, params.lambda, params.trades, rng);
  return ensemble;
}

WealthSnapshots sample_exchange(std::size_t agents, const ExchangeParams& params,
                                double initial_wealth) {
  params.validate();
  WealthEnsemble ensemble = WealthEnsemble::uniform(agents, initial_wealth);
  Rng rng(params.seed, params.stream);

  WealthSnapshots out;
  out.lambda = params.lambda;
  out.agents = agents;
  out.trades = params.trades;
  out.seed = params.seed;
  out.stream = params.stream;
  out.initial_total = ensemble.total();

  const std::uint64_t burn_in = params.trades / 2;
  const std::uint64_t spacing = agents;
  const std::uint64_t count = (params.trades - burn_in) / spacing;

  run_exchange(ensemble, params.lambda, burn_in, rng);
  if (count == 0) {
    run_exchange(ensemble, params.lambda, params.trades - burn_in, rng);
    out.values.assign(ensemble.wealths().begin(), ensemble.wealths().end());
    out.snapshots = 1;
  } else {
    out.values.reserve(count * agents);
    for (std::uint64_t k = 0; k < count; ++k) {
      run_exchange(ensemble, params.lambda, spacing, rng);
      out.values.insert(out.values.end(), ensemble.wealths().begin(), ensemble.wealths().end());
    }
    run_exchange(ensemble, params.lambda, params.trades - burn_in - count * spacing, rng);
    out.snapshots = count;
  }
  out.final_total = ensemble.recomputed_total();
  return out;
}

double effective_shape(double lambda) {
  check_lambda(lambda);
  return (1.0 + 2.0 * lambda) / (1.0 - lambda);
}

double effective_dimension(double lambda) { return 2.0 * effective_shape(lambda); }

double lambda_of_dimension(double dimension) {
  if (!(dimension >= 2.0) || !std::isfinite(dimension)) {
    throw DomainError("effective dimension must be a finite value >= 2");
  }
  return (dimension - 2.0) / (dimension + 4.0);
}

double transfer_fraction_of_dimension(double dimension) {
  if (!(dimension >= 2.0) || !std::isfinite(dimension)) {
    throw DomainError("effective dimension must be a finite value >= 2");
  }
  return 6.0 / (dimension + 4.0);
}

double effective_temperature(double mean_wealth, double dimension) {
  if (!(mean_wealth > 0.0)) throw DomainError("mean wealth must be positive");
  if (!(dimension >= 2.0)) throw DomainError("effective dimension must be >= 2");
  return 2.0 * mean_wealth / dimension;
}

}  // namespace kinex

#pragma once

// Kinetic wealth-exchange models.
//
// M agents hold nonnegative wealth. At each iteration an ordered pair (i, j),
// i != j, is drawn uniformly together with eps ~ U(0, 1), and the pair trades:
//
//   random reshuffle     x_i' = eps (x_i + x_j)
//                        x_j' = (1 - eps)(x_i + x_j)
//
//   saving propensity    x_i' = lambda x_i + eps (1 - lambda)(x_i + x_j)
//                        x_j' = lambda x_j + (1 - eps)(1 - lambda)(x_i + x_j)
//
// Both rules conserve x_i + x_j. The stationary wealth law is well described
// by a gamma density of shape n(lambda) = (1 + 2 lambda) / (1 - lambda) and
// mean equal to the initial mean wealth; 2 n is the dimension of the
// mechanically equivalent ideal gas.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kinex/rng.hpp"

namespace kinex {

class WealthEnsemble {
 public:
  // Throws ConfigError for fewer than two agents, DomainError for negative
  // or non-finite wealth.
  explicit WealthEnsemble(std::vector<double> wealths);
  static WealthEnsemble uniform(std::size_t agents, double wealth = 1.0);

  std::size_t size() const { return wealths_.size(); }
  std::span<const double> wealths() const { return wealths_; }
  double operator[](std::size_t i) const { return wealths_[i]; }
  // Cached total; constant under trades.
  double total() const { return total_; }
  double mean() const { return total_ / static_cast<double>(wealths_.size()); }
  // Fresh compensated sum of the current wealths.
  double recomputed_total() const;

  // Applies the saving-propensity rule to agents i and j. Unchecked.
  void trade(std::size_t i, std::size_t j, double lambda, double eps) noexcept;

 private:
  std::vector<double> wealths_;
  double total_;
};

struct ExchangeParams {
  double lambda = 0.0;
  std::uint64_t trades = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  void validate() const;
};

std::pair<double, double> trade_dy(double xi, double xj, double eps);
std::pair<double, double> trade_cc(double xi, double xj, double lambda, double eps);

// Runs `params.trades` iterations from `ensemble`. Deterministic in
// (seed, stream).
WealthEnsemble run_exchange(WealthEnsemble ensemble, const ExchangeParams& params);

// In-place variant drawing from a caller-owned generator.
void run_exchange(WealthEnsemble& ensemble, double lambda, std::uint64_t trades, Rng& rng);

// Pooled wealth samples from one replicate. The first half of the trades is
// discarded; afterwards the whole ensemble is copied every `agents` trades.
// When fewer than `agents` post burn-in trades remain, the final state is the
// single snapshot.
struct WealthSnapshots {
  double lambda = 0.0;
  std::size_t agents = 0;
  std::uint64_t trades = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t snapshots = 0;
  double initial_total = 0.0;
  double final_total = 0.0;  // recomputed after the run
  std::vector<double> values;
};

WealthSnapshots sample_exchange(std::size_t agents, const ExchangeParams& params,
                                double initial_wealth = 1.0);

// Gamma shape n(lambda) = (1 + 2 lambda) / (1 - lambda) = 1 + 3 lambda / (1 - lambda).
double effective_shape(double lambda);
// Effective dimension N(lambda) = 2 n(lambda); 2 at lambda = 0, unbounded as lambda -> 1.
double effective_dimension(double lambda);
// Inverse of effective_dimension: lambda = (N - 2) / (N + 4), for N >= 2.
double lambda_of_dimension(double dimension);
// Reshuffled fraction 1 - lambda expressed through the dimension, 6 / (N + 4).
// Note that the mean transfer coefficient <eps (1 - lambda)> is half of this,
// i.e. 3 / (N + 4).
double transfer_fraction_of_dimension(double dimension);
// Equipartition temperature T = 2 <x> / N.
double effective_temperature(double mean_wealth, double dimension);

}  // namespace kinex

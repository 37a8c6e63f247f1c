#pragma once

// Entropy-based characterisation of the gamma equilibrium.
//
// For a system with N quadratic degrees of freedom and energy x = q^2 / 2,
// the constrained functional
//
//   S_eff[f] = int dx f(x) [ ln( f(x) / (sigma(N) x^(N/2 - 1)) ) + mu + beta x ]
//
// with multipliers mu (normalization) and beta (mean energy) is minimized,
// over densities of fixed normalization and mean, by the gamma law of shape
// N/2 and rate beta. Minimizing S_eff is the same as maximizing the
// Boltzmann entropy under the constraints; that is the sign convention used
// throughout this module.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace kinex {

// ln( M! / prod m_j! ) with M = sum m_j. Needs a nonempty input with at least
// one positive occupation.
double multinomial_entropy(std::span<const std::uint64_t> occupations);

// Weights proportional to exp(-beta x_j), normalized to sum 1. beta >= 0.
std::vector<double> canonical_occupancy(std::span<const double> levels, double beta);

// Surface of the unit sphere in N dimensions, 2 pi^(N/2) / Gamma(N/2).
double hypersphere_surface(double dimension);

// Energy density obtained from the normalized N-dimensional Gaussian weight
// f_N(q) = (beta / 2 pi)^(N/2) exp(-beta q^2 / 2) by integrating out the
// angles, f_1(q) = sigma(N) q^(N-1) f_N(q), and changing variable to
// x = q^2 / 2, f(x) = f_1(q(x)) / sqrt(2 x). Equals the gamma density of
// shape N/2 and rate beta.
double energy_density_from_radial(double dimension, double beta, double x);

// Density sampled on a grid with trapezoidal weights, rescaled on
// construction so that its weighted sum is exactly 1.
//
// A +inf value at a grid point x = 0 (gamma shapes below 1) is stored as 0
// and the first interval is integrated with an open rule that uses only the
// value at the second node.
//
// If the density is known to behave like x^a near a grid that starts at 0,
// pass a as `endpoint_power`: the value at 0 is dropped and the weight of the
// second node gets the zeta-function endpoint correction, -zeta(-a) h. That
// removes the h^(1 + a) error term of the plain trapezoid. Assumes uniform
// spacing near 0.
class DiscretizedDensity {
 public:
  DiscretizedDensity(std::vector<double> grid, std::vector<double> values,
                     std::optional<double> endpoint_power = std::nullopt);

  // Gamma density of shape N/2 and rate beta on `nodes` uniform points over
  // [0, mean * (10 + 2 sqrt(N))], mean = N / (2 beta), with endpoint power
  // N/2 - 1.
  static DiscretizedDensity gamma(double dimension, double beta, std::size_t nodes = 2000);
  static DiscretizedDensity gamma(double dimension, double beta, std::size_t nodes, double x_max);

  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> weights() const { return weights_; }
  // Raw weighted sum before rescaling.
  double raw_integral() const { return raw_integral_; }
  double integral() const;
  double mean() const;

  // Same grid and weights, new values (rescaled to integral 1).
  DiscretizedDensity with_values(std::vector<double> values) const;

 private:
  DiscretizedDensity() = default;
  void normalize();

  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> weights_;
  double raw_integral_ = 1.0;
};

struct ConstraintSet {
  double normalization = 1.0;
  double mean = 1.0;
  void validate() const;
};

// Trapezoidal evaluation of S_eff. Nodes with f = 0 contribute nothing.
double effective_entropy(const DiscretizedDensity& f, double dimension, double beta, double mu);

// Tilts f -> f (a + b x) so that f matches `constraints` under the weights of
// `reference`, clipping negatives to zero and solving once more. Returns
// false (leaving `values` unspecified) if nonnegativity cannot be restored.
bool project_onto_constraints(std::vector<double>& values, const DiscretizedDensity& reference,
                              const ConstraintSet& constraints);

struct StationarityReport {
  double dimension = 0.0;
  double beta = 0.0;
  double amplitude = 0.0;
  std::size_t trials = 0;
  std::size_t resampled = 0;  // perturbations rejected after projection
  double min_margin = 0.0;
  double mean_margin = 0.0;
  double max_margin = 0.0;
  std::vector<double> margins;  // S_eff[perturbed] - S_eff[gamma], per trial
  bool operator==(const StationarityReport&) const = default;
};

// Random constrained perturbations of the discretized gamma law of shape N/2.
// Each perturbation is gamma * (1 + amplitude * p(x)), p a random combination
// of eight sine modes on the grid scaled to max |p| = 1, then projected onto
// the gamma's own normalization and mean. Needs trials >= 10 and
// 0 <= amplitude <= 1e-2.
StationarityReport stationarity_check(double dimension, double beta, std::size_t trials,
                                      double amplitude, std::uint64_t seed,
                                      std::size_t nodes = 2000);

struct MaxwellBoltzmannReport {
  double beta = 1.0;
  std::size_t points = 0;
  double max_abs_difference = 0.0;  // gamma_pdf(n = 3/2) vs 2 sqrt(x/pi) beta^1.5 e^(-beta x)
  double quadrature_mean = 0.0;
  double expected_mean = 0.0;  // 3 / (2 beta)
  bool operator==(const MaxwellBoltzmannReport&) const = default;
};

MaxwellBoltzmannReport maxwell_boltzmann_check(double beta = 1.0, std::size_t points = 100);

}  // namespace kinex

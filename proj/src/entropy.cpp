#include "kinex/entropy.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "kinex/distributions.hpp"
#include "kinex/errors.hpp"
#include "kinex/rng.hpp"
#include "kinex/special.hpp"

namespace kinex {
namespace {

constexpr std::size_t kModes = 8;

void check_dimension(double dimension) {
  if (!(dimension >= 1.0) || !std::isfinite(dimension)) throw DomainError("dimension must be >= 1");
}

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
}

}  // namespace

double multinomial_entropy(std::span<const std::uint64_t> occupations) {
  if (occupations.empty()) throw ConfigError("multinomial entropy of an empty occupation list");
  std::uint64_t total = 0;
  double denom = 0.0;
  for (std::uint64_t m : occupations) {
    total += m;
    denom += log_gamma(static_cast<double>(m) + 1.0);
  }
  if (total == 0) throw ConfigError("multinomial entropy needs a positive occupation");
  return std::max(0.0, log_gamma(static_cast<double>(total) + 1.0) - denom);
}

std::vector<double> canonical_occupancy(std::span<const double> levels, double beta) {
  if (levels.empty()) throw ConfigError("canonical occupancy of an empty level list");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and >= 0");
  double lowest = std::numeric_limits<double>::infinity();
  for (double x : levels) {
    if (!std::isfinite(x)) throw DomainError("levels must be finite");
    lowest = std::min(lowest, x);
  }
  std::vector<double> w(levels.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    w[j] = std::exp(-beta * (levels[j] - lowest));
    sum += w[j];
  }
  for (double& x : w) x /= sum;
  return w;
}

double hypersphere_surface(double dimension) {
  check_dimension(dimension);
  const double half = 0.5 * dimension;
  return std::exp(std::numbers::ln2 + half * std::log(std::numbers::pi) - log_gamma(half));
}

double energy_density_from_radial(double dimension, double beta, double x) {
  check_dimension(dimension);
  check_beta(beta);
  if (!(x > 0.0)) throw DomainError("radial chain needs x > 0");
  const double q = std::sqrt(2.0 * x);
  const double f_n = std::pow(beta / (2.0 * std::numbers::pi), 0.5 * dimension) *
                     std::exp(-0.5 * beta * q * q);
  const double f_1 = hypersphere_surface(dimension) * std::pow(q, dimension - 1.0) * f_n;
  return f_1 / std::sqrt(2.0 * x);
}

DiscretizedDensity::DiscretizedDensity(std::vector<double> grid, std::vector<double> values,
                                       std::optional<double> endpoint_power)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() < 2 || grid_.size() != values_.size()) {
    throw ConfigError("density needs matching grid and values with at least two nodes");
  }
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1])) throw ConfigError("density grid must be strictly increasing");
  }
  if (endpoint_power && *endpoint_power == 0.0) endpoint_power.reset();
  if (endpoint_power) {
    if (grid_[0] != 0.0) throw ConfigError("endpoint correction needs a grid starting at 0");
    if (!(*endpoint_power > -1.0)) throw DomainError("endpoint power must exceed -1");
    values_[0] = 0.0;
  }
  bool open_first = false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i == 0 && grid_[0] == 0.0 && values_[0] == std::numeric_limits<double>::infinity()) {
      values_[0] = 0.0;
      open_first = true;
      continue;
    }
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
      throw DomainError("density values must be finite and nonnegative");
    }
  }
  weights_.assign(grid_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    const double h = grid_[i + 1] - grid_[i];
    weights_[i] += 0.5 * h;
    weights_[i + 1] += 0.5 * h;
  }
  if (endpoint_power) {
    const double h = grid_[1] - grid_[0];
    weights_[0] = 0.0;
    weights_[1] -= boost::math::zeta(-*endpoint_power) * h;
  } else if (open_first) {
    weights_[1] += weights_[0];
    weights_[0] = 0.0;
  }
  normalize();
}

void DiscretizedDensity::normalize() {
  raw_integral_ = integral();
  if (!(raw_integral_ > 0.0)) throw DomainError("density has zero mass on its grid");
  for (double& v : values_) v /= raw_integral_;
}

double DiscretizedDensity::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += weights_[i] * values_[i];
  return s;
}

double DiscretizedDensity::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += weights_[i] * values_[i] * grid_[i];
  return s / integral();
}

DiscretizedDensity DiscretizedDensity::with_values(std::vector<double> values) const {
  if (values.size() != grid_.size()) throw ConfigError("value count does not match the grid");
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("density values must be finite and nonnegative");
  }
  DiscretizedDensity out;
  out.grid_ = grid_;
  out.weights_ = weights_;
  out.values_ = std::move(values);
  out.normalize();
  return out;
}

DiscretizedDensity DiscretizedDensity::gamma(double dimension, double beta, std::size_t nodes) {
  check_dimension(dimension);
  check_beta(beta);
  const double mean = 0.5 * dimension / beta;
  return gamma(dimension, beta, nodes, mean * (10.0 + 2.0 * std::sqrt(dimension)));
}

DiscretizedDensity DiscretizedDensity::gamma(double dimension, double beta, std::size_t nodes,
                                             double x_max) {
  check_dimension(dimension);
  check_beta(beta);
  if (nodes < 3) throw ConfigError("density grid needs at least three nodes");
  if (!(x_max > 0.0)) throw DomainError("grid extent must be positive");
  const GammaParams params{0.5 * dimension, beta};
  std::vector<double> grid(nodes);
  std::vector<double> values(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    grid[i] = x_max * static_cast<double>(i) / static_cast<double>(nodes - 1);
    values[i] = gamma_pdf(grid[i], params);
  }
  return DiscretizedDensity(std::move(grid), std::move(values), params.shape - 1.0);
}

void ConstraintSet::validate() const {
  if (!(normalization > 0.0) || !std::isfinite(normalization)) {
    throw DomainError("normalization target must be positive");
  }
  if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("mean target must be positive");
}

double effective_entropy(const DiscretizedDensity& f, double dimension, double beta, double mu) {
  check_dimension(dimension);
  check_beta(beta);
  const double log_sigma = std::log(hypersphere_surface(dimension));
  const double power = 0.5 * dimension - 1.0;
  const auto x = f.grid();
  const auto v = f.values();
  const auto w = f.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0 || w[i] == 0.0) continue;
    double log_measure = log_sigma;
    if (power != 0.0) log_measure += power * std::log(x[i]);
    s += w[i] * v[i] * (std::log(v[i]) - log_measure + mu + beta * x[i]);
  }
  return s;
}

bool project_onto_constraints(std::vector<double>& values, const DiscretizedDensity& reference,
                              const ConstraintSet& constraints) {
  constraints.validate();
  const auto x = reference.grid();
  const auto w = reference.weights();
  if (values.size() != x.size()) throw ConfigError("value count does not match the grid");

  auto solve_tilt = [&]() -> bool {
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double wf = w[i] * values[i];
      m0 += wf;
      m1 += wf * x[i];
      m2 += wf * x[i] * x[i];
    }
    const double det = m0 * m2 - m1 * m1;
    if (!(std::abs(det) > 0.0)) return false;
    const double target0 = constraints.normalization;
    const double target1 = constraints.normalization * constraints.mean;
    const double a = (target0 * m2 - target1 * m1) / det;
    const double b = (m0 * target1 - m1 * target0) / det;
    for (std::size_t i = 0; i < values.size(); ++i) values[i] *= a + b * x[i];
    return true;
  };
  auto clip = [&]() {
    bool clipped = false;
    for (double& v : values) {
      if (v < 0.0) {
        v = 0.0;
        clipped = true;
      }
    }
    return clipped;
  };

  if (!solve_tilt()) return false;
  if (!clip()) return true;
  if (!solve_tilt()) return false;
  return std::all_of(values.begin(), values.end(), [](double v) { return v >= 0.0; });
}

StationarityReport stationarity_check(double dimension, double beta, std::size_t trials,
                                      double amplitude, std::uint64_t seed, std::size_t nodes) {
  check_dimension(dimension);
  check_beta(beta);
  if (trials < 10) throw ConfigError("stationarity check needs at least 10 trials");
  if (!(amplitude >= 0.0 && amplitude <= 1e-2)) {
    throw ConfigError("perturbation amplitude must lie in [0, 1e-2]");
  }

  const DiscretizedDensity reference = DiscretizedDensity::gamma(dimension, beta, nodes);
  const ConstraintSet constraints{1.0, reference.mean()};
  // mu only shifts S_eff by mu * normalization; zero fixes the gauge.
  const double mu = 0.0;
  const double base = effective_entropy(reference, dimension, beta, mu);
  const auto x = reference.grid();
  const double x_max = x.back();

  StationarityReport report;
  report.dimension = dimension;
  report.beta = beta;
  report.amplitude = amplitude;
  report.trials = trials;
  report.margins.reserve(trials);

  Rng rng(seed);
  std::vector<double> shape(x.size());
  std::vector<double> values(x.size());
  const std::size_t max_attempts = 100 * trials;
  std::size_t attempts = 0;
  while (report.margins.size() < trials) {
    if (++attempts > max_attempts) throw DegenerateError("too many perturbations rejected by projection");
    if (amplitude == 0.0) {
      report.margins.push_back(0.0);
      continue;
    }
    std::array<double, kModes> coeff{};
    for (double& c : coeff) c = rng.normal();
    double peak = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double p = 0.0;
      for (std::size_t k = 0; k < kModes; ++k) {
        p += coeff[k] * std::sin(static_cast<double>(k + 1) * std::numbers::pi * x[i] / x_max);
      }
      shape[i] = p;
      peak = std::max(peak, std::abs(p));
    }
    if (peak == 0.0) continue;
    const auto ref = reference.values();
    for (std::size_t i = 0; i < x.size(); ++i) values[i] = ref[i] * (1.0 + amplitude * shape[i] / peak);
    if (!project_onto_constraints(values, reference, constraints)) {
      ++report.resampled;
      continue;
    }
    const DiscretizedDensity perturbed = reference.with_values(values);
    report.margins.push_back(effective_entropy(perturbed, dimension, beta, mu) - base);
  }

  report.min_margin = *std::min_element(report.margins.begin(), report.margins.end());
  report.max_margin = *std::max_element(report.margins.begin(), report.margins.end());
  double sum = 0.0;
  for (double m : report.margins) sum += m;
  report.mean_margin = sum / static_cast<double>(report.margins.size());
  return report;
}

MaxwellBoltzmannReport maxwell_boltzmann_check(double beta, std::size_t points) {
  check_beta(beta);
  if (points < 1) throw ConfigError("need at least one comparison point");
  const GammaParams params{1.5, beta};
  auto closed_form = [beta](double x) {
    return 2.0 * std::sqrt(x / std::numbers::pi) * std::pow(beta, 1.5) * std::exp(-beta * x);
  };
  MaxwellBoltzmannReport report;
  report.beta = beta;
  report.points = points;
  const double span = 12.0 / beta;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = span * static_cast<double>(i) / static_cast<double>(points);
    report.max_abs_difference =
        std::max(report.max_abs_difference, std::abs(gamma_pdf(x, params) - closed_form(x)));
  }
  using boost::math::quadrature::gauss_kronrod;
  report.quadrature_mean = gauss_kronrod<double, 61>::integrate(
      [&params](double x) { return x * gamma_pdf(x, params); }, 0.0,
      std::numeric_limits<double>::infinity(), 15, 1e-14);
  report.expected_mean = 1.5 / beta;
  return report;
}

}  // namespace kinex

#include "kinex/distributions.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kinex/errors.hpp"
#include "kinex/special.hpp"

namespace kinex {
namespace {

struct Moments {
  double mean;
  double variance;
};

Moments sample_moments(std::span<const double> samples) {
  if (samples.size() < 10) throw ConfigError("gamma fit needs at least 10 samples");
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : samples) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("gamma fit needs finite nonnegative samples");
    ++k;
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  return {mean, m2 / static_cast<double>(k)};
}

}  // namespace

void GammaParams::validate() const {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw DomainError("gamma shape must be positive");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("gamma rate must be positive");
}

double gamma_pdf(double x, const GammaParams& params) {
  params.validate();
  if (!(x >= 0.0)) throw DomainError("gamma_pdf needs x >= 0");
  const double xi = params.rate * x;
  if (xi == 0.0) {
    if (params.shape == 1.0) return params.rate;
    return params.shape > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (std::isinf(xi)) return 0.0;
  return params.rate *
         std::exp((params.shape - 1.0) * std::log(xi) - xi - log_gamma(params.shape));
}

double gamma_cdf(double x, const GammaParams& params) {
  params.validate();
  if (!(x >= 0.0)) throw DomainError("gamma_cdf needs x >= 0");
  return regularized_gamma_p(params.shape, params.rate * x);
}

GammaCdf::GammaCdf(const GammaParams& params) : params_(params) {
  params_.validate();
  log_gamma_shape_ = log_gamma(params_.shape);
}

double GammaCdf::operator()(double x) const {
  if (!(x > 0.0)) return 0.0;
  return regularized_gamma_p(params_.shape, params_.rate * x, log_gamma_shape_);
}

std::string_view to_string(FitMethod method) {
  return method == FitMethod::moments ? "moments" : "mle";
}

FitMethod parse_fit_method(std::string_view name) {
  if (name == "moments") return FitMethod::moments;
  if (name == "mle") return FitMethod::max_likelihood;
  throw ConfigError("unknown fit method '" + std::string(name) + "' (expected moments|mle)");
}

GammaParams fit_gamma_moments(std::span<const double> samples) {
  const auto [mean, var] = sample_moments(samples);
  if (!(var > 0.0) || !(mean > 0.0)) {
    throw DegenerateError("samples have zero variance; no gamma law fits a point mass");
  }
  return {mean * mean / var, mean / var};
}

GammaParams fit_gamma_mle(std::span<const double> samples) {
  const GammaParams start = fit_gamma_moments(samples);
  double mean_log = 0.0;
  for (double x : samples) {
    if (!(x > 0.0)) throw DomainError("maximum-likelihood gamma fit needs strictly positive samples");
    mean_log += std::log(x);
  }
  mean_log /= static_cast<double>(samples.size());
  const double mean = start.mean();
  const double target = std::log(mean) - mean_log;  // > 0 by Jensen
  if (!(target > 0.0)) throw DegenerateError("samples have no log-spread");

  // Newton on g(n) = ln n - digamma(n) - target, decreasing and convex in n.
  double n = start.shape;
  for (int it = 0; it < 100; ++it) {
    const double g = std::log(n) - boost::math::digamma(n) - target;
    const double dg = 1.0 / n - boost::math::trigamma(n);
    double next = n - g / dg;
    if (!(next > 0.0)) next = 0.5 * n;
    if (std::abs(next - n) <= 1e-14 * n) {
      n = next;
      break;
    }
    n = next;
  }
  return {n, n / mean};
}

GammaParams fit_gamma(std::span<const double> samples, FitMethod method) {
  return method == FitMethod::moments ? fit_gamma_moments(samples) : fit_gamma_mle(samples);
}

double pareto_pdf(double x, double alpha, double xmin) {
  if (!(alpha > 0.0)) throw DomainError("Pareto exponent must be positive");
  if (!(xmin > 0.0)) throw DomainError("Pareto xmin must be positive");
  if (!(x >= xmin)) throw DomainError("Pareto density is defined for x >= xmin");
  return alpha * std::pow(xmin, alpha) * std::pow(x, -1.0 - alpha);
}

double gibrat_pdf(double x, double x0, double sigma) {
  if (!(x > 0.0)) throw DomainError("Gibrat density needs x > 0");
  if (!(x0 > 0.0)) throw DomainError("Gibrat median must be positive");
  if (!(sigma > 0.0)) throw DomainError("Gibrat sigma must be positive");
  const double l = std::log(x / x0);
  return std::exp(-l * l / (2.0 * sigma * sigma)) /
         (x * sigma * std::sqrt(2.0 * std::numbers::pi));
}

double gibrat_index(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("Gibrat sigma must be positive");
  return 1.0 / std::sqrt(2.0 * sigma * sigma);
}

}  // namespace kinex

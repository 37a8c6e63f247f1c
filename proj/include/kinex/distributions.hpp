#pragma once

#include <span>
#include <string_view>

namespace kinex {

// Gamma law f(x) = beta * g_n(beta x), g_n(xi) = xi^(n-1) e^(-xi) / Gamma(n).
// Mean n / beta, variance n / beta^2.
struct GammaParams {
  double shape = 1.0;
  double rate = 1.0;

  void validate() const;  // throws DomainError unless both are finite and > 0
  double mean() const { return shape / rate; }
  double variance() const { return shape / (rate * rate); }
  bool operator==(const GammaParams&) const = default;
};

double gamma_pdf(double x, const GammaParams& params);
double gamma_cdf(double x, const GammaParams& params);

// CDF evaluator with ln Gamma(n) cached, for repeated evaluation (KS scans).
class GammaCdf {
 public:
  explicit GammaCdf(const GammaParams& params);
  double operator()(double x) const;

 private:
  GammaParams params_;
  double log_gamma_shape_;
};

enum class FitMethod { moments, max_likelihood };
std::string_view to_string(FitMethod method);
FitMethod parse_fit_method(std::string_view name);

// n = mean^2 / var, beta = mean / var with the population variance.
// Needs >= 10 nonnegative samples; zero variance raises DegenerateError.
GammaParams fit_gamma_moments(std::span<const double> samples);
// Maximum likelihood: solves ln n - digamma(n) = ln mean - mean(ln x) by
// Newton iteration from the moment estimate. All samples must be positive.
GammaParams fit_gamma_mle(std::span<const double> samples);
GammaParams fit_gamma(std::span<const double> samples, FitMethod method);

// Pareto tail alpha xmin^alpha x^(-1-alpha), x >= xmin > 0.
double pareto_pdf(double x, double alpha, double xmin);
// Lognormal with median x0 and log-variance sigma^2 (Gibrat law).
double gibrat_pdf(double x, double x0, double sigma);
// Gibrat index 1 / sqrt(2 sigma^2).
double gibrat_index(double sigma);

}  // namespace kinex

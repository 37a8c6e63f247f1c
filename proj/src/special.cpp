#include "kinex/special.hpp"

#include <math.h>

#include <cmath>
#include <limits>

#include "kinex/errors.hpp"

namespace kinex {
namespace {

constexpr int kMaxIterations = 100000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

void check_args(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("incomplete gamma needs a > 0");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma needs x >= 0");
}

// exp(-x + a ln x - lnGamma(a))
double prefactor(double a, double x, double lga) { return std::exp(-x + a * std::log(x) - lga); }

double series_p(double a, double x, double lga) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int k = 0; k < kMaxIterations; ++k) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * prefactor(a, x, lga);
}

double continued_fraction_q(double a, double x, double lga) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return prefactor(a, x, lga) * h;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma needs x > 0");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant: leaves signgam alone
#else
  return std::lgamma(x);
#endif
}

double regularized_gamma_p(double a, double x) {
  check_args(a, x);
  return regularized_gamma_p(a, x, log_gamma(a));
}

double regularized_gamma_p(double a, double x, double log_gamma_a) {
  check_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return series_p(a, x, log_gamma_a);
  return 1.0 - continued_fraction_q(a, x, log_gamma_a);
}

double regularized_gamma_q(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double lga = log_gamma(a);
  if (x < a + 1.0) return 1.0 - series_p(a, x, lga);
  return continued_fraction_q(a, x, lga);
}

}  // namespace kinex

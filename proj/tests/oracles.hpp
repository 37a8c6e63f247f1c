#pragma once

// Independent numerical oracles for the tests. Nothing here calls into the
// library under test.

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

// Double-exponential quadrature on [a, b]; tolerates endpoint singularities.
template <class F>
double integrate(F f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate(f, a, b, 1e-14);
}

// Integral over [a, inf).
template <class F>
double integrate_to_infinity(F f, double a) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate(f, a, std::numeric_limits<double>::infinity(), 1e-14);
}

// Gamma density written out directly from the closed form.
inline double gamma_density(double x, double n, double beta) {
  if (x <= 0.0) return 0.0;
  return std::pow(beta, n) * std::pow(x, n - 1.0) * std::exp(-beta * x) / std::tgamma(n);
}

// Mean absolute pairwise difference over 2 M^2 <x>, by enumeration.
inline double gini_pairwise(const std::vector<double>& x) {
  double diff = 0.0, total = 0.0;
  for (double a : x) {
    total += a;
    for (double b : x) diff += std::abs(a - b);
  }
  const double m = static_cast<double>(x.size());
  return diff / (2.0 * m * total);
}

// Empirical CDF by counting, sup-distance to `cdf` over all jump points.
template <class F>
double ks_bruteforce(const std::vector<double>& x, F cdf) {
  const double m = static_cast<double>(x.size());
  double d = 0.0;
  for (double xi : x) {
    double below = 0.0, at_or_below = 0.0;
    for (double y : x) {
      below += y < xi;
      at_or_below += y <= xi;
    }
    const double f = cdf(xi);
    d = std::max({d, std::abs(at_or_below / m - f), std::abs(below / m - f)});
  }
  return d;
}

}  // namespace oracle

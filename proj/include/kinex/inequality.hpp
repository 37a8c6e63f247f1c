#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "kinex/distributions.hpp"

namespace kinex {

struct LorenzPoint {
  double population = 0.0;  // share of agents, poorest first
  double wealth = 0.0;      // their share of total wealth
  bool operator==(const LorenzPoint&) const = default;
};

// Population Gini coefficient sum_ij |x_i - x_j| / (2 M^2 <x>), evaluated on
// the sorted sample in O(M log M). Lies in [0, 1 - 1/M]. Needs M >= 2
// nonnegative values with positive total.
double gini(std::span<const double> wealths);

// Points (k / M, share held by the poorest k), k = 0..M.
std::vector<LorenzPoint> lorenz_curve(std::span<const double> wealths);
// Same curve thinned to `points` vertices (>= 2) taken at evenly spaced ranks.
std::vector<LorenzPoint> lorenz_curve(std::span<const double> wealths, std::size_t points);

// Gini of the gamma law with shape n, (1/mean) * int F (1 - F) dx, by
// adaptive Gauss-Kronrod quadrature (absolute error below 1e-9).
double gini_of_gamma(double shape);

// Kolmogorov-Smirnov distance sup |F_emp - F|. Needs >= 10 samples.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

struct InequalityReport {
  double gini = 0.0;
  std::vector<LorenzPoint> lorenz;
  GammaParams fitted;
  double ks_statistic = 0.0;
  bool operator==(const InequalityReport&) const = default;
};

// Gini, thinned Lorenz curve, gamma fit and KS distance against the fit.
InequalityReport inequality_report(std::span<const double> samples,
                                   FitMethod method = FitMethod::moments,
                                   std::size_t lorenz_points = 101);

}  // namespace kinex

#include "kinex/inequality.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "kinex/errors.hpp"

namespace kinex {
namespace {

std::vector<double> sorted_copy(std::span<const double> wealths) {
  if (wealths.size() < 2) throw ConfigError("inequality measures need at least two values");
  std::vector<double> s(wealths.begin(), wealths.end());
  for (double x : s) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("wealths must be finite and nonnegative");
  }
  std::sort(s.begin(), s.end());
  return s;
}

double sorted_gini(const std::vector<double>& s) {
  const auto m = static_cast<double>(s.size());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    total += s[k];
    weighted += (2.0 * static_cast<double>(k + 1) - m - 1.0) * s[k];
  }
  if (!(total > 0.0)) throw DomainError("Gini coefficient is undefined for zero total wealth");
  if (s.front() == s.back()) return 0.0;
  return std::clamp(weighted / (m * total), 0.0, 1.0);
}

std::vector<LorenzPoint> sorted_lorenz(const std::vector<double>& s, std::size_t points) {
  const std::size_t m = s.size();
  std::vector<double> cumulative(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) cumulative[k + 1] = cumulative[k] + s[k];
  const double total = cumulative[m];
  if (!(total > 0.0)) throw DomainError("Lorenz curve is undefined for zero total wealth");

  auto point = [&](std::size_t k) {
    return LorenzPoint{static_cast<double>(k) / static_cast<double>(m),
                       k == m ? 1.0 : std::min(cumulative[k] / total, 1.0)};
  };
  std::vector<LorenzPoint> out;
  if (points == 0 || points >= m + 1) {
    out.reserve(m + 1);
    for (std::size_t k = 0; k <= m; ++k) out.push_back(point(k));
    return out;
  }
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const auto k = static_cast<std::size_t>(
        std::llround(static_cast<double>(i) * static_cast<double>(m) / static_cast<double>(points - 1)));
    out.push_back(point(k));
  }
  return out;
}

double sorted_ks(const std::vector<double>& s, const std::function<double(double)>& cdf) {
  const auto n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double f = cdf(s[k]);
    d = std::max({d, f - static_cast<double>(k) / n, static_cast<double>(k + 1) / n - f});
  }
  return d;
}

}  // namespace

double gini(std::span<const double> wealths) { return sorted_gini(sorted_copy(wealths)); }

std::vector<LorenzPoint> lorenz_curve(std::span<const double> wealths) {
  return sorted_lorenz(sorted_copy(wealths), 0);
}

std::vector<LorenzPoint> lorenz_curve(std::span<const double> wealths, std::size_t points) {
  if (points < 2) throw ConfigError("a Lorenz curve needs at least two points");
  return sorted_lorenz(sorted_copy(wealths), points);
}

double gini_of_gamma(double shape) {
  const GammaParams params{shape, 1.0};
  params.validate();
  const GammaCdf cdf(params);
  auto integrand = [&cdf](double x) {
    const double f = cdf(x);
    return f * (1.0 - f);
  };
  // Beyond mean + 50 sd + 60 the integrand is below 1e-20.
  const double upper = shape + 50.0 * std::sqrt(shape) + 60.0;
  using boost::math::quadrature::gauss_kronrod;
  double area = 0.0;
  // Split at the mean: the integrand is sharply peaked there for large shape.
  area += gauss_kronrod<double, 61>::integrate(integrand, 0.0, shape, 20, 1e-13);
  area += gauss_kronrod<double, 61>::integrate(integrand, shape, upper, 20, 1e-13);
  return area / shape;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.size() < 10) throw ConfigError("KS statistic needs at least 10 samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  return sorted_ks(s, cdf);
}

InequalityReport inequality_report(std::span<const double> samples, FitMethod method,
                                   std::size_t lorenz_points) {
  const std::vector<double> s = sorted_copy(samples);
  InequalityReport report;
  report.gini = sorted_gini(s);
  report.lorenz = sorted_lorenz(s, lorenz_points);
  report.fitted = fit_gamma(samples, method);
  const GammaCdf cdf(report.fitted);
  if (s.size() >= 10) report.ks_statistic = sorted_ks(s, cdf);
  return report;
}

}  // namespace kinex

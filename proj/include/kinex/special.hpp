#pragma once

namespace kinex {

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x),
// a > 0, x >= 0. Power series below x = a + 1, Lentz continued fraction
// above; absolute accuracy better than 1e-10 over the tested range.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);
// Same as regularized_gamma_p with ln Gamma(a) supplied by the caller.
double regularized_gamma_p(double a, double x, double log_gamma_a);

}  // namespace kinex

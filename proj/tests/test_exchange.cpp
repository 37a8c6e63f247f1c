#include <doctest.h>

#include <cmath>
#include <limits>
#include <tuple>

#include "kinex/distributions.hpp"
#include "kinex/errors.hpp"
#include "kinex/exchange.hpp"
#include "kinex/rng.hpp"

using namespace kinex;

TEST_CASE("trade_dy: direct substitution") {
  auto [a, b] = trade_dy(1.0, 1.0, 0.5);
  CHECK(a == 1.0);
  CHECK(b == 1.0);
  std::tie(a, b) = trade_dy(2.0, 0.0, 0.25);
  CHECK(a == 0.5);
  CHECK(b == 1.5);
}

TEST_CASE("trade_dy: domain errors") {
  CHECK_THROWS_AS(trade_dy(-1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(trade_dy(1.0, -0.1, 0.5), DomainError);
  CHECK_THROWS_AS(trade_dy(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(trade_dy(1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(trade_dy(std::numeric_limits<double>::quiet_NaN(), 1.0, 0.5), DomainError);
}

TEST_CASE("trade_cc: worked examples") {
  auto [a, b] = trade_cc(2.0, 0.0, 0.5, 0.5);
  CHECK(a == 1.5);  // 0.5*2 + 0.5*0.5*2
  CHECK(b == 0.5);  // 0 + 0.5*0.5*2
  std::tie(a, b) = trade_cc(1.0, 1.0, 0.5, 0.5);
  CHECK(a == 1.0);
  CHECK(b == 1.0);
  CHECK_THROWS_AS(trade_cc(1.0, 1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(trade_cc(1.0, 1.0, -0.1, 0.5), DomainError);
}

TEST_CASE("trade_cc: eps -> 0 limit hands the whole pool to j") {
  // (2, 0, 0.5, eps) -> (1 + eps, 1 - eps); eps itself must stay in (0, 1).
  const double eps = 1e-300;
  const auto [a, b] = trade_cc(2.0, 0.0, 0.5, eps);
  CHECK(a == doctest::Approx(1.0));
  CHECK(b == doctest::Approx(1.0));
}

TEST_CASE("trade rules: conservation, floor, nonnegativity, lambda = 0 reduction (property)") {
  Rng rng(2024);
  for (int trial = 0; trial < 100000; ++trial) {
    const double xi = rng.uniform_open() * 10.0 * (trial % 7 == 0 ? 0.0 : 1.0);
    const double xj = -std::log(rng.uniform_open());
    const double eps = rng.uniform_open();
    const double lambda = rng.uniform_open() * 0.999;

    const auto [di, dj] = trade_dy(xi, xj, eps);
    const auto [ci, cj] = trade_cc(xi, xj, lambda, eps);
    const auto [zi, zj] = trade_cc(xi, xj, 0.0, eps);
    const double sum = xi + xj;
    const double ulp = std::numeric_limits<double>::epsilon() * sum;

    REQUIRE(std::abs((di + dj) - sum) <= ulp);
    REQUIRE(std::abs((ci + cj) - sum) <= 2.0 * ulp);
    REQUIRE(ci >= 0.0);
    REQUIRE(cj >= 0.0);
    REQUIRE(ci >= lambda * xi * (1.0 - 1e-15));
    REQUIRE(cj >= lambda * xj * (1.0 - 1e-15));
    REQUIRE(zi == di);
    REQUIRE(zj == dj);
  }
}

TEST_CASE("WealthEnsemble: invariants enforced at construction") {
  CHECK_THROWS_AS(WealthEnsemble({1.0}), ConfigError);
  CHECK_THROWS_AS(WealthEnsemble({1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(WealthEnsemble::uniform(1), ConfigError);
  const auto e = WealthEnsemble::uniform(4, 2.5);
  CHECK(e.total() == 10.0);
  CHECK(e.mean() == 2.5);
}

TEST_CASE("run_exchange: one trade with M = 2 equals a direct trade_cc call") {
  const ExchangeParams params{0.3, 1, 99, 0};
  const WealthEnsemble start({1.5, 0.5});
  const WealthEnsemble end = run_exchange(start, params);

  Rng rng(99, 0);
  const auto [i, j] = rng.distinct_pair(2);
  const double eps = rng.uniform_open();
  const auto [xi, xj] = trade_cc(start[i], start[j], 0.3, eps);
  CHECK(end[i] == xi);
  CHECK(end[j] == xj);
}

TEST_CASE("run_exchange: deterministic given seed, sensitive to seed") {
  const ExchangeParams params{0.4, 50000, 7, 0};
  const auto a = run_exchange(WealthEnsemble::uniform(100), params);
  const auto b = run_exchange(WealthEnsemble::uniform(100), params);
  CHECK(std::equal(a.wealths().begin(), a.wealths().end(), b.wealths().begin()));
  auto other = params;
  other.seed = 8;
  const auto c = run_exchange(WealthEnsemble::uniform(100), other);
  CHECK_FALSE(std::equal(a.wealths().begin(), a.wealths().end(), c.wealths().begin()));
}

TEST_CASE("run_exchange: total conserved and wealth stays nonnegative") {
  const ExchangeParams params{0.0, 1'000'000, 3, 0};
  const auto e = run_exchange(WealthEnsemble::uniform(500), params);
  CHECK(std::abs(e.recomputed_total() - 500.0) / 500.0 < 1e-9);
  for (double x : e.wealths()) CHECK(x >= 0.0);
}

TEST_CASE("run_exchange: rejects lambda = 1") {
  CHECK_THROWS_AS(run_exchange(WealthEnsemble::uniform(10), ExchangeParams{1.0, 10, 1, 0}), DomainError);
}

TEST_CASE("sample_exchange: snapshot protocol and metadata") {
  const ExchangeParams params{0.2, 10000, 5, 2};
  const auto s = sample_exchange(100, params);
  CHECK(s.snapshots == 50);  // (10000 - 5000) / 100
  CHECK(s.values.size() == 5000);
  CHECK(s.agents == 100);
  CHECK(s.stream == 2);
  CHECK(s.lambda == 0.2);
  CHECK(std::abs(s.final_total - s.initial_total) / s.initial_total < 1e-12);

  const auto few = sample_exchange(100, ExchangeParams{0.2, 150, 5, 0});
  CHECK(few.snapshots == 1);
  CHECK(few.values.size() == 100);
}

TEST_CASE("equilibrium: lambda = 0 gives the exponential law (n = 1)") {
  const auto s = sample_exchange(1000, ExchangeParams{0.0, 10'000'000, 11, 0});
  const auto fit = fit_gamma_moments(s.values);
  CHECK(std::abs(fit.shape - 1.0) < 0.05);
}

TEST_CASE("equilibrium: lambda = 0.5 gives shape 4 and temperature 2<x>/8") {
  const auto s = sample_exchange(1000, ExchangeParams{0.5, 10'000'000, 12, 0});
  const auto fit = fit_gamma_moments(s.values);
  CHECK(std::abs(fit.shape - 4.0) / 4.0 < 0.05);
  const double t = effective_temperature(1.0, effective_dimension(0.5));
  CHECK(std::abs(1.0 / fit.rate - t) / t < 0.05);
}

TEST_CASE("effective dimension mapping") {
  CHECK(effective_shape(0.0) == 1.0);
  CHECK(effective_shape(0.5) == 4.0);
  CHECK(effective_shape(0.9) == doctest::Approx(28.0).epsilon(1e-12));
  CHECK(effective_dimension(0.0) == 2.0);
  CHECK(effective_dimension(0.5) == 8.0);
  for (double l : {0.0, 0.1, 0.37, 0.8, 0.99}) {
    CHECK(effective_shape(l) == doctest::Approx(1.0 + 3.0 * l / (1.0 - l)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(effective_shape(1.0), DomainError);
  CHECK_THROWS_AS(effective_shape(-0.01), DomainError);

  CHECK(lambda_of_dimension(2.0) == 0.0);
  CHECK(lambda_of_dimension(8.0) == 0.5);
  CHECK(std::abs(lambda_of_dimension(effective_dimension(0.3)) - 0.3) <= 1e-12 * 0.3);
  CHECK_THROWS_AS(lambda_of_dimension(1.9), DomainError);

  for (double l : {0.0, 0.2, 0.5, 0.8}) {
    CHECK(transfer_fraction_of_dimension(effective_dimension(l)) == doctest::Approx(1.0 - l).epsilon(1e-14));
  }
}

TEST_CASE("effective temperature") {
  CHECK(effective_temperature(1.0, 2.0) == 1.0);
  CHECK(effective_temperature(1.0, 8.0) == 0.25);
  CHECK_THROWS_AS(effective_temperature(0.0, 2.0), DomainError);
  CHECK_THROWS_AS(effective_temperature(1.0, 1.0), DomainError);
}

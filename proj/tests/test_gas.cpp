#include <doctest.h>

#include <cmath>
#include <numbers>
#include <tuple>

#include "kinex/distributions.hpp"
#include "kinex/errors.hpp"
#include "kinex/gas.hpp"

using namespace kinex;

namespace {

double dot(const Velocity& a, const Velocity& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double energy(const Velocity& v) { return 0.5 * dot(v, v); }

Velocity random_velocity(std::size_t n, Rng& rng) {
  Velocity v(n);
  for (double& c : v) c = rng.normal();
  return v;
}

// Unit vector from N-1 hyperspherical angles:
// e_k = sin(phi_1)...sin(phi_{k-1}) cos(phi_k), last component all sines.
Velocity from_angles(const std::vector<double>& phi) {
  Velocity e(phi.size() + 1);
  double sines = 1.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    e[k] = sines * std::cos(phi[k]);
    sines *= std::sin(phi[k]);
  }
  e.back() = sines;
  return e;
}

// Cosine between two such vectors written as the sum of products of the
// per-component angle factors.
double cosine_expansion(const std::vector<double>& phi, const std::vector<double>& theta) {
  double r = 0.0;
  double sp = 1.0, st = 1.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    r += (sp * std::cos(phi[k])) * (st * std::cos(theta[k]));
    sp *= std::sin(phi[k]);
    st *= std::sin(theta[k]);
  }
  return r + sp * st;
}

}  // namespace

TEST_CASE("sample_unit_direction: N = 1 is a fair sign") {
  Rng rng(1);
  int plus = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto u = sample_unit_direction(1, rng);
    REQUIRE(std::abs(u[0]) == 1.0);
    plus += u[0] > 0.0;
  }
  CHECK(std::abs(plus - n / 2) < 4.0 * std::sqrt(n / 4.0));
}

TEST_CASE("sample_unit_direction: unit norm in every dimension") {
  Rng rng(2);
  for (std::size_t n = 1; n <= 24; ++n) {
    for (int i = 0; i < 200; ++i) {
      const auto u = sample_unit_direction(n, rng);
      REQUIRE(std::abs(std::sqrt(dot(u, u)) - 1.0) < 1e-12);
    }
  }
  CHECK_THROWS_AS(sample_unit_direction(0, rng), DomainError);
}

TEST_CASE("sample_unit_direction: N = 3 moments match the uniform sphere") {
  Rng rng(3);
  const int n = 1'000'000;
  double s1[3] = {}, s2[3] = {}, s4[3] = {};
  for (int i = 0; i < n; ++i) {
    const auto u = sample_unit_direction(3, rng);
    for (int k = 0; k < 3; ++k) {
      s1[k] += u[k];
      s2[k] += u[k] * u[k];
      s4[k] += u[k] * u[k] * u[k] * u[k];
    }
  }
  for (int k = 0; k < 3; ++k) {
    const double mean = s1[k] / n;
    const double msq = s2[k] / n;
    const double se_mean = std::sqrt((msq - mean * mean) / n);
    const double se_msq = std::sqrt((s4[k] / n - msq * msq) / n);
    CHECK(std::abs(mean) < 3.0 * se_mean);
    CHECK(std::abs(msq - 1.0 / 3.0) < 3.0 * se_msq);
  }
}

TEST_CASE("collide: 1D head-on collision swaps velocities") {
  const Velocity v1{1.0}, v2{-1.0}, u{1.0};
  const auto [a, b] = collide(v1, v2, u);
  CHECK(a[0] == -1.0);
  CHECK(b[0] == 1.0);
  const Velocity dv{a[0] - v1[0]};
  const auto r = collision_cosines(v1, v2, dv);
  REQUIRE(r.r1);
  REQUIRE(r.r2);
  CHECK(*r.r1 == -1.0);
  CHECK(*r.r2 == 1.0);
}

TEST_CASE("collide: equal velocities are left alone") {
  const Velocity v{0.3, -1.2, 2.0};
  Rng rng(4);
  const auto u = sample_unit_direction(3, rng);
  const auto [a, b] = collide(v, v, u);
  CHECK(a == v);
  CHECK(b == v);
}

TEST_CASE("collide: rejects a non-unit direction") {
  const Velocity v1{1.0, 0.0}, v2{0.0, 0.0};
  CHECK_THROWS_AS(collide(v1, v2, Velocity{1.0, 1e-4}), DomainError);
  CHECK_THROWS_AS(collide(v1, v2, Velocity{1.0}), DomainError);
}

TEST_CASE("collide: N = 2 conserves energy 1/2 and momentum (1, 0)") {
  Rng rng(5);
  const Velocity v1{1.0, 0.0}, v2{0.0, 0.0};
  for (int i = 0; i < 1000; ++i) {
    const double th = 2.0 * std::numbers::pi * rng.uniform_open();
    const auto [a, b] = collide(v1, v2, Velocity{std::cos(th), std::sin(th)});
    CHECK(std::abs(energy(a) + energy(b) - 0.5) < 1e-12);
    CHECK(std::abs(a[0] + b[0] - 1.0) < 1e-12);
    CHECK(std::abs(a[1] + b[1]) < 1e-12);
  }
}

TEST_CASE("collision identities hold for random collisions (property)") {
  Rng rng(6);
  for (std::size_t n : {1u, 2u, 3u, 5u, 10u}) {
    for (int i = 0; i < 2000; ++i) {
      const auto v1 = random_velocity(n, rng);
      const auto v2 = random_velocity(n, rng);
      const auto u = sample_unit_direction(n, rng);
      const auto [a, b] = collide(v1, v2, u);
      Velocity dv(n), rel(n);
      for (std::size_t k = 0; k < n; ++k) {
        dv[k] = a[k] - v1[k];
        rel[k] = v1[k] - v2[k];
      }
      const double scale = dot(v1, v1) + dot(v2, v2);
      // energy-conservation constraint on the transfer
      REQUIRE(std::abs(dot(dv, dv) + dot(rel, dv)) < 1e-12 * scale);

      const auto r = collision_cosines(v1, v2, dv);
      if (!r.r1 || !r.r2) continue;
      REQUIRE(std::abs(*r.r1) <= 1.0);
      REQUIRE(std::abs(*r.r2) <= 1.0);
      // |dv| = -r1 |v1| + r2 |v2|
      const double lhs = std::sqrt(dot(dv, dv));
      const double rhs = -*r.r1 * std::sqrt(dot(v1, v1)) + *r.r2 * std::sqrt(dot(v2, v2));
      REQUIRE(std::abs(lhs - rhs) < 1e-12 * std::sqrt(scale));
      // energy update form reproduces the direct kinematics
      const auto [x1, x2] = energy_update_form(energy(v1), energy(v2), *r.r1, *r.r2);
      REQUIRE(std::abs(x1 - energy(a)) <= 1e-9 * scale);
      REQUIRE(std::abs(x2 - energy(b)) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("collision_cosines: orthogonal transfer and undefined cases") {
  const Velocity v1{1.0, 0.0}, v2{0.5, 0.5}, dv{0.0, 2.0};
  const auto r = collision_cosines(v1, v2, dv);
  REQUIRE(r.r1);
  CHECK(*r.r1 == 0.0);

  const auto zero_speed = collision_cosines(Velocity{0.0, 0.0}, v2, dv);
  CHECK_FALSE(zero_speed.r1);
  CHECK(zero_speed.r2);
  const auto no_transfer = collision_cosines(v1, v2, Velocity{0.0, 0.0});
  CHECK_FALSE(no_transfer.r1);
  CHECK_FALSE(no_transfer.r2);
}

TEST_CASE("energy_update_form: limits and conservation") {
  auto [a, b] = energy_update_form(0.7, 2.1, 1.0, -1.0);
  CHECK(a == doctest::Approx(2.1));
  CHECK(b == doctest::Approx(0.7));
  std::tie(a, b) = energy_update_form(0.7, 2.1, 0.0, 0.0);
  CHECK(a == 0.7);
  CHECK(b == 2.1);
  std::tie(a, b) = energy_update_form(0.7, 2.1, 0.3, 0.6);
  CHECK(a + b == doctest::Approx(2.8).epsilon(1e-15));
  CHECK_THROWS_AS(energy_update_form(-1.0, 1.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(energy_update_form(1.0, 1.0, 1.5, 0.0), DomainError);
}

TEST_CASE("hyperspherical cosine expansion matches the dot product (N = 2, 3)") {
  Rng rng(8);
  for (std::size_t n : {2u, 3u}) {
    for (int i = 0; i < 500; ++i) {
      std::vector<double> phi(n - 1), theta(n - 1);
      for (std::size_t k = 0; k < n - 1; ++k) {
        // last angle spans the full circle, the others [0, pi]
        const double range = (k + 2 == n) ? 2.0 * std::numbers::pi : std::numbers::pi;
        phi[k] = range * rng.uniform_open();
        theta[k] = range * rng.uniform_open();
      }
      const auto v1 = from_angles(phi);
      const auto dv = from_angles(theta);
      const double speed = 0.5 + rng.uniform_open();
      Velocity v1s = v1;
      for (double& c : v1s) c *= speed;
      const auto r = collision_cosines(v1s, v1s, dv);
      REQUIRE(r.r1);
      CHECK(std::abs(*r.r1 - cosine_expansion(phi, theta)) < 1e-12);
    }
  }
}

TEST_CASE("mean_square_cosine: 1/N law") {
  const auto one = mean_square_cosine(1, 10000, 1);
  CHECK(one.mean == 1.0);
  CHECK(one.standard_error == 0.0);
  for (std::size_t n : {3u, 10u}) {
    const auto est = mean_square_cosine(n, 1'000'000, 42 + n);
    CHECK(std::abs(est.mean - 1.0 / static_cast<double>(n)) < 3.0 * est.standard_error);
  }
  CHECK_THROWS_AS(mean_square_cosine(3, 999, 1), ConfigError);
}

TEST_CASE("run_gas: zero collisions leave the state unchanged") {
  Rng rng(9);
  const auto s = GasState::isotropic(10, 3, 1.0, rng);
  const auto t = run_gas(s, 0, 1);
  CHECK(std::equal(s.velocities().begin(), s.velocities().end(), t.velocities().begin()));
}

TEST_CASE("run_gas: deterministic and conservative") {
  Rng rng(10);
  const auto s = GasState::isotropic(200, 4, 1.3, rng);
  const auto a = run_gas(s, 200000, 77);
  const auto b = run_gas(s, 200000, 77);
  CHECK(std::equal(a.velocities().begin(), a.velocities().end(), b.velocities().begin()));
  CHECK(std::abs(a.recomputed_energy() - s.total_energy()) / s.total_energy() < 1e-9);
  const auto p0 = s.total_momentum();
  const auto p1 = a.recomputed_momentum();
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(p1[k] - p0[k]) < 1e-9 * 1.3 * 200);
  CHECK_THROWS_AS(GasState(1, 3, std::vector<double>(3, 0.0)), ConfigError);
}

TEST_CASE("run_gas: relaxes an anisotropic start to isotropy") {
  // Every particle starts along axis 0 with alternating sign: zero momentum,
  // all energy in one component.
  const std::size_t m = 500, n = 3;
  std::vector<double> v(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) v[i * n] = (i % 2 == 0) ? 1.0 : -1.0;
  GasState state(m, n, v);
  Rng rng(12);
  run_gas(state, 200000, rng);
  double sum[3] = {}, sq[3] = {}, q4[3] = {};
  const int snaps = 200;
  for (int s = 0; s < snaps; ++s) {
    run_gas(state, 5 * m, rng);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double c = state.velocity(i)[k];
        sum[k] += c;
        sq[k] += c * c;
        q4[k] += c * c * c * c;
      }
    }
  }
  const double count = static_cast<double>(snaps * m);
  const double target = 2.0 * state.total_energy() / static_cast<double>(m * n);
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(std::abs(sum[k] / count) < 1e-9);  // total momentum is exactly zero
    const double msq = sq[k] / count;
    // snapshots are correlated; allow a generous multiple of the naive error
    const double se = std::sqrt((q4[k] / count - msq * msq) / count);
    CHECK(std::abs(msq - target) < 10.0 * se);
  }
}

TEST_CASE("equilibrium: N = 3 energies follow gamma shape 3/2, N = 2 exponential") {
  for (std::size_t n : {2u, 3u}) {
    const auto s = sample_gas(1000, n, 10'000'000, 21, 0);
    const auto fit = fit_gamma_moments(s.values);
    const double expected = 0.5 * static_cast<double>(n);
    CHECK(std::abs(fit.shape - expected) / expected < 0.05);
  }
}

#include "kinex/gas.hpp"

#include <algorithm>
#include <cmath>

#include "kinex/errors.hpp"

namespace kinex {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void require_same_dimension(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw DomainError("velocity vectors must share a nonzero dimension");
  }
}

}  // namespace

GasState::GasState(std::size_t particles, std::size_t dimension, std::vector<double> velocities)
    : particles_(particles), dimension_(dimension), velocities_(std::move(velocities)) {
  if (particles_ < 2) throw ConfigError("a gas needs at least two particles");
  if (dimension_ < 1) throw DomainError("dimension must be at least 1");
  if (velocities_.size() != particles_ * dimension_) {
    throw ConfigError("velocity array does not match particles x dimension");
  }
  for (double v : velocities_) {
    if (!std::isfinite(v)) throw DomainError("velocities must be finite");
  }
  total_energy_ = recomputed_energy();
  total_momentum_ = recomputed_momentum();
}

GasState GasState::isotropic(std::size_t particles, std::size_t dimension, double speed, Rng& rng) {
  if (dimension < 1) throw DomainError("dimension must be at least 1");
  std::vector<double> v(particles * dimension);
  for (std::size_t i = 0; i < particles; ++i) {
    std::span<double> row(v.data() + i * dimension, dimension);
    sample_unit_direction(row, rng);
    for (double& c : row) c *= speed;
  }
  return GasState(particles, dimension, std::move(v));
}

double GasState::recomputed_energy() const {
  double e = 0.0;
  for (double v : velocities_) e += v * v;
  return 0.5 * e;
}

std::vector<double> GasState::recomputed_momentum() const {
  std::vector<double> p(dimension_, 0.0);
  for (std::size_t i = 0; i < particles_; ++i) {
    for (std::size_t k = 0; k < dimension_; ++k) p[k] += velocities_[i * dimension_ + k];
  }
  return p;
}

double GasState::kinetic_energy(std::size_t i) const {
  const auto v = velocity(i);
  return 0.5 * dot(v, v);
}

std::vector<double> GasState::kinetic_energies() const {
  std::vector<double> out(particles_);
  for (std::size_t i = 0; i < particles_; ++i) out[i] = kinetic_energy(i);
  return out;
}

void GasState::collide(std::size_t i, std::size_t j, std::span<const double> u) noexcept {
  double* a = velocities_.data() + i * dimension_;
  double* b = velocities_.data() + j * dimension_;
  double proj = 0.0;
  for (std::size_t k = 0; k < dimension_; ++k) proj += (a[k] - b[k]) * u[k];
  for (std::size_t k = 0; k < dimension_; ++k) {
    const double dv = -proj * u[k];
    a[k] += dv;
    b[k] -= dv;
  }
}

void sample_unit_direction(std::span<double> out, Rng& rng) {
  if (out.empty()) throw DomainError("dimension must be at least 1");
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& c : out) {
      c = rng.normal();
      n2 += c * c;
    }
  } while (n2 == 0.0);
  const double norm = std::sqrt(n2);
  for (double& c : out) c /= norm;
}

Velocity sample_unit_direction(std::size_t dimension, Rng& rng) {
  Velocity out(dimension);
  sample_unit_direction(out, rng);
  return out;
}

std::pair<Velocity, Velocity> collide(std::span<const double> v1, std::span<const double> v2,
                                      std::span<const double> u_hat) {
  require_same_dimension(v1, v2);
  require_same_dimension(v1, u_hat);
  if (std::abs(norm(u_hat) - 1.0) > 1e-9) throw DomainError("transfer direction must be a unit vector");
  double proj = 0.0;
  for (std::size_t k = 0; k < v1.size(); ++k) proj += (v1[k] - v2[k]) * u_hat[k];
  Velocity out1(v1.begin(), v1.end());
  Velocity out2(v2.begin(), v2.end());
  for (std::size_t k = 0; k < v1.size(); ++k) {
    const double dv = -proj * u_hat[k];
    out1[k] += dv;
    out2[k] -= dv;
  }
  return {std::move(out1), std::move(out2)};
}

CollisionCosines collision_cosines(std::span<const double> v1, std::span<const double> v2,
                                   std::span<const double> delta_v) {
  require_same_dimension(v1, v2);
  require_same_dimension(v1, delta_v);
  CollisionCosines out;
  const double dv = norm(delta_v);
  if (dv == 0.0) return out;
  auto cosine = [&](std::span<const double> v) -> std::optional<double> {
    const double speed = norm(v);
    if (speed == 0.0) return std::nullopt;
    return std::clamp(dot(v, delta_v) / (speed * dv), -1.0, 1.0);
  };
  out.r1 = cosine(v1);
  out.r2 = cosine(v2);
  return out;
}

std::pair<double, double> energy_update_form(double x1, double x2, double r1, double r2) {
  if (!(x1 >= 0.0) || !(x2 >= 0.0)) throw DomainError("energies must be nonnegative");
  if (!(std::abs(r1) <= 1.0) || !(std::abs(r2) <= 1.0)) throw DomainError("cosines must lie in [-1, 1]");
  const double gain = r2 * r2 * x2;
  const double loss = r1 * r1 * x1;
  return {x1 + gain - loss, x2 - gain + loss};
}

CosineEstimate mean_square_cosine(std::size_t dimension, std::uint64_t samples,
                                  std::uint64_t seed, std::uint64_t stream) {
  if (dimension < 1) throw DomainError("dimension must be at least 1");
  if (samples < 1000) throw ConfigError("mean_square_cosine needs at least 1000 samples");
  Rng rng(seed, stream);
  Velocity v1(dimension), v2(dimension), u(dimension), dv(dimension);
  CosineEstimate est;
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t k = 0; k < dimension; ++k) {
      v1[k] = rng.normal();
      v2[k] = rng.normal();
    }
    sample_unit_direction(u, rng);
    double proj = 0.0;
    for (std::size_t k = 0; k < dimension; ++k) proj += (v1[k] - v2[k]) * u[k];
    for (std::size_t k = 0; k < dimension; ++k) dv[k] = -proj * u[k];
    const auto r = collision_cosines(v1, v2, dv);
    if (!r.r1) {
      ++est.skipped;
      continue;
    }
    const double y = *r.r1 * *r.r1;
    ++est.samples;
    const double delta = y - mean;
    mean += delta / static_cast<double>(est.samples);
    m2 += delta * (y - mean);
  }
  est.mean = mean;
  if (est.samples > 1) {
    const auto n = static_cast<double>(est.samples);
    est.standard_error = std::sqrt(m2 / (n - 1.0) / n);
  }
  return est;
}

GasRunStats run_gas(GasState& state, std::uint64_t collisions, Rng& rng, bool track_conservation) {
  const std::size_t m = state.particles();
  const std::size_t d = state.dimension();
  if (m < 2) throw ConfigError("a gas needs at least two particles");
  GasRunStats stats;
  stats.collisions = collisions;
  Velocity u(d);
  std::vector<double> p_before(d);
  for (std::uint64_t c = 0; c < collisions; ++c) {
    const auto [i, j] = rng.distinct_pair(m);
    sample_unit_direction(u, rng);
    if (!track_conservation) {
      state.collide(i, j, u);
      continue;
    }
    const auto a = state.velocity(i);
    const auto b = state.velocity(j);
    const double e_before = 0.5 * (dot(a, a) + dot(b, b));
    const double speed_scale = norm(a) + norm(b);
    for (std::size_t k = 0; k < d; ++k) p_before[k] = a[k] + b[k];
    state.collide(i, j, u);
    const double e_after = 0.5 * (dot(a, a) + dot(b, b));
    if (e_before > 0.0) {
      stats.max_collision_energy_error =
          std::max(stats.max_collision_energy_error, std::abs(e_after - e_before) / e_before);
    }
    if (speed_scale > 0.0) {
      for (std::size_t k = 0; k < d; ++k) {
        const double err = std::abs(a[k] + b[k] - p_before[k]) / speed_scale;
        stats.max_collision_momentum_error = std::max(stats.max_collision_momentum_error, err);
      }
    }
  }
  return stats;
}

GasState run_gas(GasState state, std::uint64_t collisions, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  run_gas(state, collisions, rng);
  return state;
}

EnergySnapshots sample_gas(std::size_t particles, std::size_t dimension, std::uint64_t collisions,
                           std::uint64_t seed, std::uint64_t stream, double mean_energy,
                           bool track_conservation) {
  if (particles < 2) throw ConfigError("a gas needs at least two particles");
  if (!(mean_energy > 0.0)) throw DomainError("mean energy must be positive");
  Rng rng(seed, stream);
  GasState state = GasState::isotropic(particles, dimension, std::sqrt(2.0 * mean_energy), rng);

  EnergySnapshots out;
  out.dimension = dimension;
  out.particles = particles;
  out.collisions = collisions;
  out.seed = seed;
  out.stream = stream;
  out.initial_energy = state.total_energy();

  auto merge = [&out](const GasRunStats& s) {
    out.stats.collisions += s.collisions;
    out.stats.max_collision_energy_error =
        std::max(out.stats.max_collision_energy_error, s.max_collision_energy_error);
    out.stats.max_collision_momentum_error =
        std::max(out.stats.max_collision_momentum_error, s.max_collision_momentum_error);
  };

  const std::uint64_t burn_in = collisions / 2;
  const std::uint64_t spacing = particles;
  const std::uint64_t count = (collisions - burn_in) / spacing;
  merge(run_gas(state, burn_in, rng, track_conservation));
  if (count == 0) {
    merge(run_gas(state, collisions - burn_in, rng, track_conservation));
    out.values = state.kinetic_energies();
    out.snapshots = 1;
  } else {
    out.values.reserve(count * particles);
    for (std::uint64_t k = 0; k < count; ++k) {
      merge(run_gas(state, spacing, rng, track_conservation));
      for (std::size_t i = 0; i < particles; ++i) out.values.push_back(state.kinetic_energy(i));
    }
    merge(run_gas(state, collisions - burn_in - count * spacing, rng, track_conservation));
    out.snapshots = count;
  }
  out.final_energy = state.recomputed_energy();
  const auto p_final = state.recomputed_momentum();
  const auto p_initial = state.total_momentum();
  for (std::size_t k = 0; k < dimension; ++k) {
    out.momentum_drift = std::max(out.momentum_drift, std::abs(p_final[k] - p_initial[k]));
  }
  return out;
}

}  // namespace kinex

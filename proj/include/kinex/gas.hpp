#pragma once

// Equal-mass elastic collisions in N dimensions.
//
// Unit masses. A collision transfers momentum dv along a direction u:
//   v1' = v1 + dv,  v2' = v2 - dv,  dv = -[(v1 - v2) . u] u
// which satisfies dv^2 + (v1 - v2) . dv = 0, i.e. conserves kinetic energy.
// Under molecular chaos u is drawn uniformly on the unit sphere,
// independently of the velocities. A hard-sphere kernel (rate proportional
// to the relative speed) would change relaxation times but not the
// stationary energy law, which is a gamma density of shape N / 2.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kinex/rng.hpp"

namespace kinex {

using Velocity = std::vector<double>;

class GasState {
 public:
  // `velocities` is row-major, particles x dimension.
  GasState(std::size_t particles, std::size_t dimension, std::vector<double> velocities);
  // Every particle gets speed `speed` along an independent uniform direction.
  static GasState isotropic(std::size_t particles, std::size_t dimension, double speed, Rng& rng);

  std::size_t particles() const { return particles_; }
  std::size_t dimension() const { return dimension_; }
  std::span<const double> velocity(std::size_t i) const {
    return {velocities_.data() + i * dimension_, dimension_};
  }
  std::span<const double> velocities() const { return velocities_; }

  // Totals cached at construction; collisions conserve them.
  double total_energy() const { return total_energy_; }
  std::span<const double> total_momentum() const { return total_momentum_; }
  double recomputed_energy() const;
  std::vector<double> recomputed_momentum() const;

  double kinetic_energy(std::size_t i) const;
  std::vector<double> kinetic_energies() const;

  // Collides particles i and j along unit direction u. Unchecked.
  void collide(std::size_t i, std::size_t j, std::span<const double> u) noexcept;

 private:
  std::size_t particles_;
  std::size_t dimension_;
  std::vector<double> velocities_;
  double total_energy_ = 0.0;
  std::vector<double> total_momentum_;
};

// Uniform direction on the (N-1)-sphere via normalized Gaussian deviates.
void sample_unit_direction(std::span<double> out, Rng& rng);
Velocity sample_unit_direction(std::size_t dimension, Rng& rng);

// Post-collision velocities. Throws DomainError when |u| deviates from 1 by
// more than 1e-9 or the dimensions differ.
std::pair<Velocity, Velocity> collide(std::span<const double> v1, std::span<const double> v2,
                                      std::span<const double> u_hat);

// Cosines of the angles between dv and each incoming velocity. A cosine is
// empty when the respective speed or |dv| vanishes.
struct CollisionCosines {
  std::optional<double> r1;
  std::optional<double> r2;
};

CollisionCosines collision_cosines(std::span<const double> v1, std::span<const double> v2,
                                   std::span<const double> delta_v);

// Energy bookkeeping of a collision written through the cosines:
//   x1' = x1 + r2^2 x2 - r1^2 x1,  x2' = x2 - r2^2 x2 + r1^2 x1.
std::pair<double, double> energy_update_form(double x1, double x2, double r1, double r2);

struct CosineEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t skipped = 0;  // collisions with undefined r1
};

// Monte Carlo estimate of <r1^2> over collisions with Gaussian incoming
// velocities and uniform transfer directions. Requires samples >= 1000.
CosineEstimate mean_square_cosine(std::size_t dimension, std::uint64_t samples,
                                  std::uint64_t seed, std::uint64_t stream = 0);

struct GasRunStats {
  std::uint64_t collisions = 0;
  // Worst single-collision errors, relative to the pair's energy and to the
  // pair's summed speed respectively.
  double max_collision_energy_error = 0.0;
  double max_collision_momentum_error = 0.0;
};

// Runs `collisions` uniform random pair collisions. Throws ConfigError for
// fewer than two particles.
GasState run_gas(GasState state, std::uint64_t collisions, std::uint64_t seed,
                 std::uint64_t stream = 0);
GasRunStats run_gas(GasState& state, std::uint64_t collisions, Rng& rng,
                    bool track_conservation = false);

// Per-particle kinetic energies sampled like the wealth snapshots: half the
// collisions discarded, then one snapshot every `particles` collisions.
struct EnergySnapshots {
  std::size_t dimension = 0;
  std::size_t particles = 0;
  std::uint64_t collisions = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t snapshots = 0;
  double initial_energy = 0.0;
  double final_energy = 0.0;  // recomputed
  double momentum_drift = 0.0;  // max component |P_final - P_initial|
  GasRunStats stats;
  std::vector<double> values;
};

// Starts from equal speeds sqrt(2 * mean_energy) in random directions.
EnergySnapshots sample_gas(std::size_t particles, std::size_t dimension, std::uint64_t collisions,
                           std::uint64_t seed, std::uint64_t stream = 0,
                           double mean_energy = 1.0, bool track_conservation = false);

}  // namespace kinex

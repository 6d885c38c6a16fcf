#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "resmon/trace.hpp"

namespace resmon {

class FlockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Displacement window [start, end) in seconds.
struct DisturbanceWindow {
  double start = 0.0;
  double end = 0.0;
};

struct FlockParams {
  std::size_t n = 30;
  std::size_t dims = 2;
  double dt = 0.1;
  double r_c = 25.0;
  double omega = 0.01;
  double delta = 500.0;

  double magnitude_max = 20.0;
  std::vector<DisturbanceWindow> windows{{100.0, 150.0}, {250.0, 300.0}, {400.0, 450.0}};
  std::size_t affected = 20;
  /// Draw a fresh affected subset every step instead of once per window.
  bool resample_each_step = false;

  // Steering gains. separation/cohesion/alignment act on neighbours within
  // r_c; centering pulls toward the whole flock's centroid so isolated boids
  // rejoin; damping is a linear drag on velocity.
  double separation = 3.0;
  double cohesion = 0.1;
  double alignment = 0.5;
  double centering = 0.02;
  double damping = 0.3;
  double max_speed = 15.0;
  double max_accel = 20.0;

  /// Initial positions uniform in [0, position_extent]^dims, velocities
  /// uniform in [-velocity_extent, velocity_extent]^dims.
  double position_extent = 200.0;
  double velocity_extent = 5.0;

  std::uint64_t seed = 0;
  /// Add one channel per boid coordinate (b<i>_<axis>) to simulate()'s output.
  bool record_positions = false;

  /// Throws FlockError on inconsistent settings.
  void validate() const;
};

/// Positions and velocities are flat n*dims arrays, boid-major.
struct FlockState {
  std::vector<double> positions;
  std::vector<double> velocities;
  std::int64_t k = 0;
  /// Boids displaced in the current window, and that window's index (-1 outside).
  std::vector<std::size_t> disturbed;
  int window = -1;
};

FlockState initial_state(const FlockParams& params, std::mt19937_64& rng);

/// x(k+1) = x(k) + dt*v(k) + d(k);  v(k+1) = v(k) + dt*a(k).
FlockState step(const FlockState& state, const FlockParams& params, std::mt19937_64& rng);

/// Steering acceleration of every boid, flat like the state.
std::vector<double> accelerations(const FlockState& state, const FlockParams& params);

/// Cohesion term plus omega-weighted inverse-square separation over ordered
/// neighbour pairs. Throws FlockError when two boids within r_c coincide.
double cost_J(std::span<const double> positions, const FlockParams& params);

/// Components of the graph linking boids closer than r_c.
std::size_t connected_components(std::span<const double> positions, const FlockParams& params);

/// Runs duration_seconds / dt steps. Channels J and CC, one row per step
/// including the initial state.
Signal simulate(const FlockParams& params, double duration_seconds);

}  // namespace resmon

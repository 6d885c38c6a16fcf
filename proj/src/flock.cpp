#include "resmon/flock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/core.h>

namespace resmon {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0), count_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --count_;
  }

  std::size_t count() const noexcept { return count_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
  std::size_t count_;
};

double dist2(std::span<const double> p, std::size_t dims, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t a = 0; a < dims; ++a) {
    const double d = p[i * dims + a] - p[j * dims + a];
    s += d * d;
  }
  return s;
}

void clamp_norm(double* v, std::size_t dims, double limit) {
  double s = 0.0;
  for (std::size_t a = 0; a < dims; ++a) s += v[a] * v[a];
  if (s > limit * limit) {
    const double f = limit / std::sqrt(s);
    for (std::size_t a = 0; a < dims; ++a) v[a] *= f;
  }
}

Step to_step(double seconds, double dt) { return static_cast<Step>(std::llround(seconds / dt)); }

int active_window(const FlockParams& params, Step k) {
  for (std::size_t w = 0; w < params.windows.size(); ++w) {
    if (k >= to_step(params.windows[w].start, params.dt) &&
        k < to_step(params.windows[w].end, params.dt)) {
      return static_cast<int>(w);
    }
  }
  return -1;
}

}  // namespace

void FlockParams::validate() const {
  if (n < 2) throw FlockError("a flock needs at least 2 boids");
  if (dims < 1) throw FlockError("dims must be at least 1");
  if (!(dt > 0.0)) throw FlockError("dt must be positive");
  if (!(r_c > 0.0)) throw FlockError("r_c must be positive");
  if (affected > n) throw FlockError(fmt::format("cannot disturb {} of {} boids", affected, n));
  if (magnitude_max < 0.0) throw FlockError("disturbance magnitude must be non-negative");
  if (max_speed <= 0.0 || max_accel <= 0.0) throw FlockError("speed and acceleration limits must be positive");
  auto sorted = windows;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].start <= sorted[i].end)) throw FlockError("disturbance window ends before it starts");
    if (i > 0 && sorted[i].start < sorted[i - 1].end) throw FlockError("disturbance windows overlap");
  }
}

FlockState initial_state(const FlockParams& params, std::mt19937_64& rng) {
  params.validate();
  std::uniform_real_distribution<double> pos(0.0, params.position_extent);
  std::uniform_real_distribution<double> vel(-params.velocity_extent, params.velocity_extent);
  FlockState s;
  s.positions.resize(params.n * params.dims);
  s.velocities.resize(params.n * params.dims);
  for (auto& x : s.positions) x = pos(rng);
  for (auto& v : s.velocities) v = vel(rng);
  return s;
}

std::vector<double> accelerations(const FlockState& state, const FlockParams& params) {
  const std::size_t n = params.n, m = params.dims;
  const auto& x = state.positions;
  const auto& v = state.velocities;
  const double r2 = params.r_c * params.r_c;

  std::vector<double> centroid(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < m; ++a) centroid[a] += x[i * m + a] / static_cast<double>(n);
  }

  std::vector<double> acc(n * m, 0.0);
  std::vector<double> sep(m), pos_sum(m), vel_sum(m);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(sep.begin(), sep.end(), 0.0);
    std::fill(pos_sum.begin(), pos_sum.end(), 0.0);
    std::fill(vel_sum.begin(), vel_sum.end(), 0.0);
    std::size_t neighbours = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d2 = dist2(x, m, i, j);
      if (d2 >= r2) continue;
      ++neighbours;
      for (std::size_t a = 0; a < m; ++a) {
        if (d2 > 0.0) sep[a] += (x[i * m + a] - x[j * m + a]) / d2;
        pos_sum[a] += x[j * m + a];
        vel_sum[a] += v[j * m + a];
      }
    }
    double* ai = &acc[i * m];
    for (std::size_t a = 0; a < m; ++a) {
      const double xi = x[i * m + a], vi = v[i * m + a];
      ai[a] = params.centering * (centroid[a] - xi) - params.damping * vi;
      if (neighbours > 0) {
        const double k = static_cast<double>(neighbours);
        ai[a] += params.separation * sep[a] + params.cohesion * (pos_sum[a] / k - xi) +
                 params.alignment * (vel_sum[a] / k - vi);
      }
    }
    clamp_norm(ai, m, params.max_accel);
  }
  return acc;
}

FlockState step(const FlockState& state, const FlockParams& params, std::mt19937_64& rng) {
  const std::size_t n = params.n, m = params.dims;
  FlockState next = state;
  next.k = state.k + 1;

  const int window = active_window(params, state.k);
  if (window < 0) {
    next.disturbed.clear();
  } else if (window != state.window || params.resample_each_step) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    next.disturbed.clear();
    std::sample(all.begin(), all.end(), std::back_inserter(next.disturbed), params.affected, rng);
  }
  next.window = window;

  const auto acc = accelerations(state, params);
  for (std::size_t i = 0; i < n * m; ++i) {
    next.positions[i] = state.positions[i] + params.dt * state.velocities[i];
    next.velocities[i] = state.velocities[i] + params.dt * acc[i];
  }
  for (std::size_t i = 0; i < n; ++i) clamp_norm(&next.velocities[i * m], m, params.max_speed);

  std::uniform_real_distribution<double> magnitude(0.0, params.magnitude_max);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> normal;
  for (const auto i : next.disturbed) {
    const double r = magnitude(rng);
    double* xi = &next.positions[i * m];
    if (m == 2) {
      const double theta = angle(rng);
      xi[0] += r * std::cos(theta);
      xi[1] += r * std::sin(theta);
      continue;
    }
    std::vector<double> dir(m);
    double norm = 0.0;
    while (norm == 0.0) {
      norm = 0.0;
      for (auto& c : dir) {
        c = normal(rng);
        norm += c * c;
      }
    }
    norm = std::sqrt(norm);
    for (std::size_t a = 0; a < m; ++a) xi[a] += r * dir[a] / norm;
  }
  return next;
}

double cost_J(std::span<const double> positions, const FlockParams& params) {
  const std::size_t n = params.n, m = params.dims;
  if (n < 2) throw FlockError("cost_J needs at least 2 boids");
  if (positions.size() != n * m) throw FlockError("position array does not match n * dims");
  const double r2 = params.r_c * params.r_c;
  double spread = 0.0, crowding = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d2 = dist2(positions, m, i, j);
      spread += d2;
      if (d2 < r2) {
        if (d2 == 0.0) throw FlockError(fmt::format("boids {} and {} coincide", i, j));
        crowding += 2.0 / d2;  // (i,j) and (j,i)
      }
    }
  }
  return spread / static_cast<double>(n * (n - 1)) + params.omega * crowding;
}

std::size_t connected_components(std::span<const double> positions, const FlockParams& params) {
  const std::size_t n = params.n, m = params.dims;
  if (positions.size() != n * m) throw FlockError("position array does not match n * dims");
  const double r2 = params.r_c * params.r_c;
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist2(positions, m, i, j) < r2) sets.unite(i, j);
    }
  }
  return sets.count();
}

Signal simulate(const FlockParams& params, double duration_seconds) {
  params.validate();
  const double steps_real = duration_seconds / params.dt;
  const Step steps = static_cast<Step>(std::llround(steps_real));
  if (steps < 1 || std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * std::max(1.0, steps_real)) {
    throw FlockError(fmt::format("duration {} s is not a positive whole number of {} s steps",
                                 duration_seconds, params.dt));
  }

  std::vector<std::string> channels{"J", "CC"};
  if (params.record_positions) {
    for (std::size_t i = 0; i < params.n; ++i) {
      for (std::size_t a = 0; a < params.dims; ++a) channels.push_back(fmt::format("b{}_{}", i, a));
    }
  }

  std::mt19937_64 rng(params.seed);
  FlockState state = initial_state(params, rng);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(steps + 1) * channels.size());
  for (Step k = 0;; ++k) {
    samples.push_back(cost_J(state.positions, params));
    samples.push_back(static_cast<double>(connected_components(state.positions, params)));
    if (params.record_positions) {
      samples.insert(samples.end(), state.positions.begin(), state.positions.end());
    }
    if (k == steps) break;
    state = step(state, params, rng);
  }
  return Signal(std::move(channels), std::move(samples), params.dt);
}

}  // namespace resmon

#pragma once

#include "shotsel/geometry.hpp"
#include "shotsel/random.hpp"

namespace shotsel {

struct BallState {
  Vec2 position;      // meters
  Vec2 velocity;      // meters / step
  Vec2 acceleration;  // meters / step^2
};

struct DynamicsConfig {
  double decay = 0.94;
  /// Per-step noise half-width as a fraction of the pre-noise speed.
  double noise_coefficient = 0.05;
  double max_speed = 3.0;
  double kick_power_rate = 0.027;
  double max_power = 100.0;

  void validate() const;
};

struct CrossingOutcome {
  bool crossed = false;
  double lateral_at_goal_line = 0.0;  // only meaningful when crossed
  int steps_taken = 0;
};

/// Speed below which a rolling ball counts as stopped.
inline constexpr double kStopSpeed = 1e-3;

/// One simulator cycle: u = v + a + noise, p += u, v = decay * u, a = 0.
/// Noise is drawn per component from U[-r, r] with r = noise_coefficient * |v + a|;
/// v + a is first limited to max_speed.
BallState step(const BallState& state, const DynamicsConfig& config, Rng& rng);

/// Sets the acceleration to kick_power_rate * power along `direction`.
/// Throws DomainError when power is outside [0, max_power].
BallState kick(const BallState& state, double power, double direction, const DynamicsConfig& config);

/// Lateral coordinate where the segment prev -> next crosses x = goal_x,
/// by linear interpolation. Requires prev.x < goal_x <= next.x.
double crossing_lateral(Vec2 prev, Vec2 next, double goal_x);

/// Steps until the ball reaches the goal line or stops.
CrossingOutcome rollout_to_goal_line(BallState state, const DynamicsConfig& config,
                                     const FieldConfig& field, Rng& rng);

/// Noise-free total distance travelled from a given initial speed.
double travel_range(double initial_speed, double decay);

}  // namespace shotsel

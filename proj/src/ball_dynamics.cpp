#include "shotsel/ball_dynamics.hpp"

#include <stdexcept>

namespace shotsel {

namespace {

constexpr int kMaxRolloutSteps = 100000;

Vec2 limit_speed(Vec2 v, double max_speed) {
  const double s = v.norm();
  return s > max_speed ? v * (max_speed / s) : v;
}

}  // namespace

void DynamicsConfig::validate() const {
  if (!(decay > 0.0 && decay < 1.0)) throw std::invalid_argument("decay must lie in (0, 1)");
  if (!(noise_coefficient >= 0.0)) throw std::invalid_argument("noise_coefficient must be >= 0");
  if (!(max_speed > 0.0)) throw std::invalid_argument("max_speed must be positive");
  if (!(kick_power_rate >= 0.0)) throw std::invalid_argument("kick_power_rate must be >= 0");
  if (!(max_power > 0.0)) throw std::invalid_argument("max_power must be positive");
}

BallState step(const BallState& state, const DynamicsConfig& config, Rng& rng) {
  const Vec2 base = limit_speed(state.velocity + state.acceleration, config.max_speed);
  Vec2 u = base;
  const double r_max = config.noise_coefficient * base.norm();
  if (r_max > 0.0) {
    std::uniform_real_distribution<double> noise(-r_max, r_max);
    u.x += noise(rng);
    u.y += noise(rng);
  }
  BallState next;
  next.position = state.position + u;
  next.velocity = limit_speed(u * config.decay, config.max_speed);
  next.acceleration = {0.0, 0.0};
  return next;
}

BallState kick(const BallState& state, double power, double direction, const DynamicsConfig& config) {
  if (!(power >= 0.0 && power <= config.max_power)) {
    throw DomainError("kick power outside [0, max_power]");
  }
  BallState next = state;
  next.acceleration = Vec2::polar(config.kick_power_rate * power, direction);
  return next;
}

double crossing_lateral(Vec2 prev, Vec2 next, double goal_x) {
  const double dx = next.x - prev.x;
  if (dx <= 0.0) return next.y;
  const double f = (goal_x - prev.x) / dx;
  return prev.y + f * (next.y - prev.y);
}

CrossingOutcome rollout_to_goal_line(BallState state, const DynamicsConfig& config,
                                     const FieldConfig& field, Rng& rng) {
  CrossingOutcome out;
  while (out.steps_taken < kMaxRolloutSteps) {
    const BallState next = step(state, config, rng);
    ++out.steps_taken;
    if (next.position.x >= field.goal_line_x) {
      out.crossed = true;
      out.lateral_at_goal_line = crossing_lateral(state.position, next.position, field.goal_line_x);
      return out;
    }
    if (next.velocity.norm() < kStopSpeed) return out;
    state = next;
  }
  return out;
}

double travel_range(double initial_speed, double decay) {
  if (!(decay > 0.0 && decay < 1.0)) throw DomainError("decay must lie in (0, 1)");
  return initial_speed / (1.0 - decay);
}

}  // namespace shotsel

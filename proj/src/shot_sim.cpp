#include "shotsel/shot_sim.hpp"

#include <algorithm>
#include <stdexcept>

namespace shotsel {

namespace {

constexpr int kMaxShotSteps = 500;

struct Chaser {
  Vec2 position;
  double speed;
  int delay;
  double reach;
  double aim_noise;
};

// Closest point to `p` on the ball's current path, limited to the part in
// front of the goal line.
Vec2 closest_on_path(Vec2 p, const BallState& ball, double goal_x) {
  const double speed = ball.velocity.norm();
  if (speed < kStopSpeed) return ball.position;
  const Vec2 dir = ball.velocity * (1.0 / speed);
  double t_max = 1e9;
  if (dir.x > 0.0) t_max = std::max(0.0, (goal_x - ball.position.x) / dir.x);
  const double t = std::clamp((p - ball.position).dot(dir), 0.0, t_max);
  return ball.position + dir * t;
}

}  // namespace

void KeeperModel::validate() const {
  if (!(max_speed >= 0 && reaction_delay >= 0 && catch_radius >= 0 && positioning_noise >= 0)) {
    throw std::invalid_argument("keeper model parameters must be non-negative");
  }
}

void DefenderModel::validate() const {
  if (!(max_speed >= 0 && reaction_delay >= 0 && intercept_radius >= 0)) {
    throw std::invalid_argument("defender model parameters must be non-negative");
  }
}

std::string_view to_string(ShotResult result) {
  switch (result) {
    case ShotResult::Goal: return "GOAL";
    case ShotResult::Caught: return "CAUGHT";
    case ShotResult::Wide: return "WIDE";
    case ShotResult::NoKick: return "NO_KICK";
  }
  return "?";
}

ShotTrace simulate_shot(const KickScene& scene, Vec2 target, double power, const InterceptionModel& opponents,
                        const DynamicsConfig& dynamics, const FieldConfig& field, Rng& rng) {
  std::vector<Chaser> chasers;
  const KeeperModel& k = opponents.keeper;
  chasers.push_back({scene.keeper, k.max_speed, k.reaction_delay, k.catch_radius, k.positioning_noise});
  const DefenderModel& d = opponents.defender;
  for (Vec2 pos : scene.defenders) {
    chasers.push_back({pos, d.max_speed, d.reaction_delay, d.intercept_radius, 0.0});
  }

  const double direction = std::atan2(target.y - scene.ball.y, target.x - scene.ball.x);
  BallState ball{scene.ball, scene.ball_velocity, {0.0, 0.0}};
  ball = kick(ball, std::clamp(power, 0.0, dynamics.max_power), direction, dynamics);

  std::normal_distribution<double> gauss(0.0, 1.0);
  ShotTrace trace;
  for (int t = 1; t <= kMaxShotSteps; ++t) {
    BallState next = step(ball, dynamics, rng);
    trace.steps = t;
    const bool crossed = next.position.x >= field.goal_line_x;
    Vec2 end = next.position;
    if (crossed) {
      trace.lateral_at_goal_line = crossing_lateral(ball.position, next.position, field.goal_line_x);
      end = {field.goal_line_x, trace.lateral_at_goal_line};
    }

    bool intercepted = false;
    for (auto& c : chasers) {
      const Vec2 before = c.position;
      if (t > c.delay && c.speed > 0.0) {
        Vec2 aim = closest_on_path(c.position, next, field.goal_line_x);
        if (c.aim_noise > 0.0) aim += Vec2{gauss(rng), gauss(rng)} * c.aim_noise;
        const Vec2 to = aim - c.position;
        const double gap = to.norm();
        if (gap > 0.0) c.position += to * (std::min(c.speed, gap) / gap);
      }
      if (distance_to_segment(before, ball.position, end) <= c.reach || distance(c.position, end) <= c.reach) {
        intercepted = true;
      }
    }
    if (intercepted) {
      trace.result = ShotResult::Caught;
      return trace;
    }
    if (crossed) {
      trace.result = std::abs(trace.lateral_at_goal_line) < field.goal_width / 2.0 ? ShotResult::Goal
                                                                                   : ShotResult::Wide;
      return trace;
    }
    if (next.velocity.norm() < kStopSpeed) break;
    ball = next;
  }
  trace.result = ShotResult::Caught;
  return trace;
}

}  // namespace shotsel

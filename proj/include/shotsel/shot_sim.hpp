#pragma once

#include <string_view>

#include "shotsel/ball_dynamics.hpp"
#include "shotsel/scene.hpp"

namespace shotsel {

struct KeeperModel {
  double max_speed = 0.3;          // meters / step
  int reaction_delay = 2;          // steps before the keeper starts moving
  double catch_radius = 0.5;       // meters
  double positioning_noise = 0.2;  // std of the keeper's aim point, meters

  void validate() const;
};

/// Field players pursue the ball like the keeper but cannot catch it; an
/// interception ends the shot just the same.
struct DefenderModel {
  double max_speed = 0.3;
  int reaction_delay = 2;
  double intercept_radius = 0.8;

  void validate() const;
};

struct InterceptionModel {
  KeeperModel keeper;
  DefenderModel defender;
};

enum class ShotResult { Goal, Caught, Wide, NoKick };

std::string_view to_string(ShotResult result);

struct ShotTrace {
  ShotResult result = ShotResult::NoKick;
  int steps = 0;
  double lateral_at_goal_line = 0.0;  // valid for Goal and Wide
};

/// Kicks the ball from scene.ball towards `target` with `power` and plays the
/// shot out against the keeper and the scene's defenders. Each step the ball
/// advances, then every opponent past its reaction delay moves towards the
/// closest point of the ball's current path. Caught when an opponent's reach
/// covers the ball's movement in that step; a ball that stops short of the
/// goal line also counts as caught.
ShotTrace simulate_shot(const KickScene& scene, Vec2 target, double power, const InterceptionModel& opponents,
                        const DynamicsConfig& dynamics, const FieldConfig& field, Rng& rng);

}  // namespace shotsel

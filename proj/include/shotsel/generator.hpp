#pragma once

#include <cstdint>
#include <vector>

#include "shotsel/aim_model.hpp"
#include "shotsel/shot_sim.hpp"

namespace shotsel {

/// Sampling regions for synthetic shot situations.
struct GeneratorConfig {
  double min_shot_distance = 5.0;   // ball to goal center, meters
  double max_shot_distance = 25.0;
  double max_ball_lateral = 18.0;   // |ball.y|
  double keeper_min_advance = 0.5;  // keeper distance off the goal line towards the ball
  double keeper_max_advance = 7.0;
  double keeper_lateral_spread = 3.0;  // std of the keeper's sideways displacement
  int max_defenders = 3;
  double defender_lateral_extent = 15.0;
  double min_kick_power = 90.0;
  double max_kick_power = 100.0;
  double body_angle_spread = 0.6;  // std of body orientation around the goal direction, radians
  InterceptionModel opponents;

  void validate() const;
};

/// Samples an unlabeled shot situation (ball, attacker, keeper, defenders,
/// kick power, and an aim point drawn uniformly over the target range).
KickScene sample_scene(const GeneratorConfig& gen, const FieldConfig& field, const AimConfig& aim, Rng& rng);

/// `n` labeled scenes; labels come from simulating each shot against the
/// configured opponents. Deterministic per seed.
std::vector<KickScene> generate_synthetic_scenes(std::size_t n, const GeneratorConfig& gen,
                                                 const DynamicsConfig& dynamics, const FieldConfig& field,
                                                 const AimConfig& aim, std::uint64_t seed);

}  // namespace shotsel

#pragma once

#include <vector>

#include "shotsel/geometry.hpp"

namespace shotsel {

/// A shot from `ball` aimed at `target` on the goal line.
struct ShotQuery {
  Vec2 ball;
  Vec2 target;
};

struct AimConfig {
  double sigma_coefficient = 1.88;  // meters
  double sigma_horizon = 45.0;      // meters
  double p_goal_threshold = 0.70;
  int target_count = 15;
  double target_inset = 0.25;  // meters, distance of the outermost targets from the posts

  void validate() const;
};

struct AimResult {
  double p_left = 0.0;
  double p_right = 0.0;
  double p_goal = 0.0;
};

/// Standard normal CDF via erfc, accurate in both tails.
double normal_cdf(double z);

/// Lateral standard deviation of a shot after travelling `d` meters:
/// -sigma_coefficient * ln(1 - d / sigma_horizon). DomainError outside [0, horizon).
double sigma(double d, const AimConfig& config);

/// Probability the ball passes outside the left (positive-y) post.
double p_miss_left(const ShotQuery& query, const FieldConfig& field, const AimConfig& config);

/// Probability the ball passes outside the right (negative-y) post.
double p_miss_right(const ShotQuery& query, const FieldConfig& field, const AimConfig& config);

/// Miss-left, miss-right and on-target probabilities. The three always sum to
/// one; if both tails together exceed one (targets far outside the goal) the
/// right tail is truncated. DomainError when either post is beyond the horizon.
AimResult p_goal(const ShotQuery& query, const FieldConfig& field, const AimConfig& config);

/// True when both posts are strictly inside the sigma horizon from `ball`.
bool within_horizon(Vec2 ball, const FieldConfig& field, const AimConfig& config);

/// `target_count` evenly spaced goal-line points, inset from the posts,
/// sorted by lateral coordinate.
std::vector<Vec2> discretize_targets(const FieldConfig& field, const AimConfig& config);

}  // namespace shotsel

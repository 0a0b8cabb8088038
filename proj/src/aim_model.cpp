#include "shotsel/aim_model.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace shotsel {

namespace {

void check_query(const ShotQuery& q, const FieldConfig& field) {
  if (!q.ball.finite() || !q.target.finite()) throw DomainError("shot query: non-finite input");
  if (!(q.ball.x < field.goal_line_x)) throw DomainError("shot query: ball must be in front of the goal line");
}

}  // namespace

void AimConfig::validate() const {
  if (!(sigma_coefficient > 0.0)) throw std::invalid_argument("sigma_coefficient must be positive");
  if (!(sigma_horizon > 0.0)) throw std::invalid_argument("sigma_horizon must be positive");
  if (!(p_goal_threshold > 0.0 && p_goal_threshold < 1.0)) {
    throw std::invalid_argument("p_goal_threshold must lie in (0, 1)");
  }
  if (target_count < 1) throw std::invalid_argument("target_count must be >= 1");
  if (!(target_inset >= 0.0)) throw std::invalid_argument("target_inset must be >= 0");
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double sigma(double d, const AimConfig& config) {
  if (!(d >= 0.0 && d < config.sigma_horizon)) {
    throw DomainError("sigma: distance outside [0, sigma_horizon)");
  }
  return -config.sigma_coefficient * std::log1p(-d / config.sigma_horizon);
}

// The lateral deviation at a post's range is N(0, sigma(d_post)), measured as
// a signed offset from the shooting line (positive to the left). The ball
// misses left when the deviation exceeds S_l, the left post's own offset, and
// misses right when it falls below S_r.
double p_miss_left(const ShotQuery& query, const FieldConfig& field, const AimConfig& config) {
  check_query(query, field);
  const Vec2 post = field.left_post();
  const double s = sigma(distance(query.ball, post), config);
  const double offset = signed_offset(Ray::through(query.ball, query.target), post);
  if (s == 0.0) return offset < 0.0 ? 1.0 : (offset == 0.0 ? 0.5 : 0.0);
  return normal_cdf(-offset / s);
}

double p_miss_right(const ShotQuery& query, const FieldConfig& field, const AimConfig& config) {
  check_query(query, field);
  const Vec2 post = field.right_post();
  const double s = sigma(distance(query.ball, post), config);
  const double offset = signed_offset(Ray::through(query.ball, query.target), post);
  if (s == 0.0) return offset > 0.0 ? 1.0 : (offset == 0.0 ? 0.5 : 0.0);
  return normal_cdf(offset / s);
}

AimResult p_goal(const ShotQuery& query, const FieldConfig& field, const AimConfig& config) {
  AimResult r;
  r.p_left = p_miss_left(query, field, config);
  r.p_right = std::min(p_miss_right(query, field, config), 1.0 - r.p_left);
  r.p_goal = std::max(0.0, 1.0 - r.p_left - r.p_right);
  return r;
}

bool within_horizon(Vec2 ball, const FieldConfig& field, const AimConfig& config) {
  return ball.x < field.goal_line_x && distance(ball, field.left_post()) < config.sigma_horizon &&
         distance(ball, field.right_post()) < config.sigma_horizon;
}

std::vector<Vec2> discretize_targets(const FieldConfig& field, const AimConfig& config) {
  config.validate();
  const double half = field.goal_width / 2.0 - config.target_inset;
  if (half < 0.0) throw std::invalid_argument("target_inset exceeds half the goal width");
  std::vector<Vec2> targets;
  targets.reserve(static_cast<std::size_t>(config.target_count));
  if (config.target_count == 1) {
    targets.push_back(field.goal_center());
    return targets;
  }
  // Written symmetrically so mirrored targets are exact negatives.
  const int n = config.target_count - 1;
  for (int i = 0; i <= n; ++i) {
    targets.push_back({field.goal_line_x, half * (2 * i - n) / n});
  }
  return targets;
}

}  // namespace shotsel

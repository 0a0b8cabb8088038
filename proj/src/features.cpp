#include "shotsel/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace shotsel {

const std::array<std::string_view, kFeatureCount>& FeatureVector::names() {
  static const std::array<std::string_view, kFeatureCount> names = {
      "ball_x",
      "ball_y",
      "keeper_x",
      "keeper_y",
      "keeper_distance_to_ball",
      "keeper_abs_offset_from_shot_line",
      "angle_ball_keeper_destiny",
      "angle_attacker_vision",
      "attacker_body_angle_minus_shot_angle",
      "ball_distance_to_target",
      "ball_distance_to_near_post",
      "ball_distance_to_far_post",
      "kick_power",
      "target_lateral",
      "filtered_defender_count",
      "def1_distance_to_ball",
      "def1_abs_offset_from_shot_line",
      "def1_distance_to_goal_center",
      "def2_distance_to_ball",
      "def2_abs_offset_from_shot_line",
      "def2_distance_to_goal_center",
      "def3_distance_to_ball",
  };
  return names;
}

std::vector<Vec2> filter_defenders(const KickScene& scene, const FieldConfig& field) {
  std::vector<Vec2> out;
  for (Vec2 d : scene.defenders) {
    if (d == scene.keeper) continue;
    if (d.x > scene.attacker.x && d.x <= field.goal_line_x && field.inside_penalty_band(d.y)) {
      out.push_back(d);
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](Vec2 a, Vec2 b) {
    return distance(a, scene.ball) < distance(b, scene.ball);
  });
  return out;
}

double angle_ball_keeper_destiny(Vec2 ball, Vec2 keeper, Vec2 target) {
  const Vec2 a = keeper - ball;
  const Vec2 b = target - ball;
  if (a.norm() == 0.0 || b.norm() == 0.0) return 0.0;
  return std::atan2(std::abs(a.cross(b)), a.dot(b));
}

FeatureVector extract_features(const KickScene& scene, const FieldConfig& field) {
  return extract_features(scene, scene.target, field);
}

FeatureVector extract_features(const KickScene& scene, Vec2 target, const FieldConfig& field) {
  using namespace feature;
  FeatureVector f;
  const Vec2 ball = scene.ball;
  const Ray shot = target == ball ? Ray(ball, {1.0, 0.0}) : Ray::through(ball, target);
  const double d_left = distance(ball, field.left_post());
  const double d_right = distance(ball, field.right_post());

  f[kBallX] = ball.x;
  f[kBallY] = ball.y;
  f[kKeeperX] = scene.keeper.x;
  f[kKeeperY] = scene.keeper.y;
  f[kKeeperDistanceToBall] = distance(scene.keeper, ball);
  f[kKeeperAbsOffsetFromShotLine] = std::abs(signed_offset(shot, scene.keeper));
  f[kAngleBallKeeperDestiny] = angle_ball_keeper_destiny(ball, scene.keeper, target);
  f[kAngleAttackerVision] = (d_left > 0.0 && d_right > 0.0)
                                ? opening_angle(ball, field.left_post(), field.right_post())
                                : 0.0;
  f[kBodyAngleMinusShotAngle] = wrap_angle(scene.attacker_body_angle - shot.angle());
  f[kBallDistanceToTarget] = distance(ball, target);
  f[kBallDistanceToNearPost] = std::min(d_left, d_right);
  f[kBallDistanceToFarPost] = std::max(d_left, d_right);
  f[kKickPower] = scene.kick_power;
  f[kTargetLateral] = target.y;

  const auto defenders = filter_defenders(scene, field);
  f[kFilteredDefenderCount] = static_cast<double>(defenders.size());

  const double far = field.field_length;
  const double wide = field.penalty_area_width;
  auto triple = [&](std::size_t rank, std::size_t base, bool full) {
    if (rank < defenders.size()) {
      const Vec2 d = defenders[rank];
      f[base] = distance(d, ball);
      if (full) {
        f[base + 1] = std::abs(signed_offset(shot, d));
        f[base + 2] = distance(d, field.goal_center());
      }
    } else {
      f[base] = far;
      if (full) {
        f[base + 1] = wide;
        f[base + 2] = far;
      }
    }
  };
  triple(0, kDef1DistanceToBall, true);
  triple(1, kDef2DistanceToBall, true);
  triple(2, kDef3DistanceToBall, false);
  return f;
}

double percentile_sorted(const std::vector<double>& sorted, double pct) {
  if (sorted.empty()) throw std::invalid_argument("percentile of an empty sample");
  if (!(pct >= 0.0 && pct <= 100.0)) throw std::invalid_argument("percentile outside [0, 100]");
  const double rank = pct / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

FeatureSummary summarize(std::string_view name, std::vector<double> values) {
  FeatureSummary s;
  s.name = name;
  const std::size_t total = values.size();
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  s.missing_fraction = total == 0 ? 0.0 : static_cast<double>(total - values.size()) / total;
  if (values.empty()) {
    s.mean = s.stddev = s.median = s.percentile_1 = s.percentile_99 = std::nan("");
    return s;
  }
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / n);
  std::sort(values.begin(), values.end());
  s.median = percentile_sorted(values, 50.0);
  s.percentile_1 = percentile_sorted(values, 1.0);
  s.percentile_99 = percentile_sorted(values, 99.0);
  return s;
}

UnivariateReport univariate_stats(const std::vector<KickScene>& scenes, const FieldConfig& field) {
  if (scenes.empty()) throw std::invalid_argument("univariate_stats needs at least one scene");
  std::vector<std::vector<double>> columns(kFeatureCount);
  for (auto& c : columns) c.reserve(scenes.size());
  for (const auto& s : scenes) {
    const FeatureVector f = extract_features(s, field);
    for (std::size_t i = 0; i < kFeatureCount; ++i) columns[i].push_back(f[i]);
  }
  UnivariateReport report;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    report.push_back(summarize(FeatureVector::names()[i], std::move(columns[i])));
  }
  return report;
}

}  // namespace shotsel

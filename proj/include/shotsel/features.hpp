#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "shotsel/scene.hpp"

namespace shotsel {

inline constexpr std::size_t kFeatureCount = 22;

/// Canonical model input derived from a kick scene. Index order is fixed;
/// see feature_names().
struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  static const std::array<std::string_view, kFeatureCount>& names();
};

namespace feature {
// Indices into FeatureVector::values.
enum Index : std::size_t {
  kBallX = 0,
  kBallY,
  kKeeperX,
  kKeeperY,
  kKeeperDistanceToBall,
  kKeeperAbsOffsetFromShotLine,
  kAngleBallKeeperDestiny,
  kAngleAttackerVision,
  kBodyAngleMinusShotAngle,
  kBallDistanceToTarget,
  kBallDistanceToNearPost,
  kBallDistanceToFarPost,
  kKickPower,
  kTargetLateral,
  kFilteredDefenderCount,
  kDef1DistanceToBall,
  kDef1AbsOffsetFromShotLine,
  kDef1DistanceToGoalCenter,
  kDef2DistanceToBall,
  kDef2AbsOffsetFromShotLine,
  kDef2DistanceToGoalCenter,
  kDef3DistanceToBall,
};
}  // namespace feature

/// Defenders strictly ahead of the attacker (attacker.x < x <= goal line) and
/// laterally inside the penalty area, sorted by distance to the ball.
/// A defender standing exactly on the keeper's position is treated as the keeper.
std::vector<Vec2> filter_defenders(const KickScene& scene, const FieldConfig& field);

/// Features for the scene's own target.
FeatureVector extract_features(const KickScene& scene, const FieldConfig& field);

/// Features for the scene as if the shot were aimed at `target`.
FeatureVector extract_features(const KickScene& scene, Vec2 target, const FieldConfig& field);

/// Angle at the ball between the keeper and the aim point, in [0, pi].
double angle_ball_keeper_destiny(Vec2 ball, Vec2 keeper, Vec2 target);

struct FeatureSummary {
  std::string_view name;
  double mean = 0.0;
  double stddev = 0.0;
  double median = 0.0;
  double percentile_1 = 0.0;
  double percentile_99 = 0.0;
  double missing_fraction = 0.0;
};

using UnivariateReport = std::vector<FeatureSummary>;

/// Percentile (0..100) by linear interpolation between order statistics of
/// an already sorted sample.
double percentile_sorted(const std::vector<double>& sorted, double pct);

/// Mean, population standard deviation, median, 1st/99th percentiles and the
/// fraction of non-finite values for one column.
FeatureSummary summarize(std::string_view name, std::vector<double> values);

UnivariateReport univariate_stats(const std::vector<KickScene>& scenes, const FieldConfig& field);

}  // namespace shotsel

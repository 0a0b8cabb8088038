#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "shotsel/features.hpp"

namespace shotsel {

/// A classifier score with its true label; higher scores mean "more GOAL-like".
struct ScoredSample {
  double score = 0.0;
  Label label = Label::NoGoal;
};

struct RocPoint {
  double false_positive_rate = 0.0;
  double true_positive_rate = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // from (0,0) to (1,1)
  double auc = 0.0;
};

struct Ks2Curve {
  std::vector<double> thresholds;  // distinct scores, ascending
  std::vector<double> cdf_positive;
  std::vector<double> cdf_negative;
  double ks2 = 0.0;
  double ks2_threshold = 0.0;
};

/// ROC swept over every distinct score; tied scores form a single step so the
/// trapezoidal area equals the Mann-Whitney statistic.
RocCurve roc_curve(std::vector<ScoredSample> samples);

/// Fraction of (positive, negative) pairs ranked correctly, ties counted 1/2.
double auc_rank(const std::vector<ScoredSample>& samples);

/// Empirical class CDFs at every distinct score and their maximum gap.
Ks2Curve ks2_curve(std::vector<ScoredSample> samples);

struct FeatureRelevance {
  std::string_view name;
  double auc = 0.0;         // raw AUC with the feature value as score
  double folded_auc = 0.0;  // max(auc, 1 - auc)
};

/// max(auc, 1 - auc) of a single column used as a score.
double folded_auc(const std::vector<double>& values, const std::vector<Label>& labels);

/// Every canonical feature treated as a classifier on its own.
std::vector<FeatureRelevance> feature_relevance(const std::vector<KickScene>& scenes, const FieldConfig& field);

}  // namespace shotsel

#include "shotsel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shotsel {

namespace {

std::pair<std::size_t, std::size_t> class_counts(const std::vector<ScoredSample>& samples) {
  std::size_t pos = 0;
  for (const auto& s : samples) {
    if (!std::isfinite(s.score)) throw std::invalid_argument("scores must be finite");
    if (s.label == Label::Goal) ++pos;
  }
  const std::size_t neg = samples.size() - pos;
  if (pos == 0 || neg == 0) throw std::invalid_argument("both classes must be present");
  return {pos, neg};
}

}  // namespace

RocCurve roc_curve(std::vector<ScoredSample> samples) {
  const auto [pos, neg] = class_counts(samples);
  std::sort(samples.begin(), samples.end(), [](const ScoredSample& a, const ScoredSample& b) {
    return a.score > b.score;
  });
  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  double area = 0.0;
  for (std::size_t i = 0; i < samples.size();) {
    const double threshold = samples[i].score;
    const std::size_t tp0 = tp;
    const std::size_t fp0 = fp;
    for (; i < samples.size() && samples[i].score == threshold; ++i) {
      (samples[i].label == Label::Goal ? tp : fp) += 1;
    }
    // Trapezoid in count units; normalized once at the end.
    area += static_cast<double>(fp - fp0) * static_cast<double>(tp + tp0) / 2.0;
    curve.points.push_back({static_cast<double>(fp) / neg, static_cast<double>(tp) / pos});
  }
  curve.auc = area / (static_cast<double>(pos) * static_cast<double>(neg));
  return curve;
}

double auc_rank(const std::vector<ScoredSample>& samples) {
  const auto [pos, neg] = class_counts(samples);
  double wins = 0.0;
  for (const auto& p : samples) {
    if (p.label != Label::Goal) continue;
    for (const auto& n : samples) {
      if (n.label != Label::NoGoal) continue;
      if (p.score > n.score) {
        wins += 1.0;
      } else if (p.score == n.score) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(pos) * static_cast<double>(neg));
}

Ks2Curve ks2_curve(std::vector<ScoredSample> samples) {
  const auto [pos, neg] = class_counts(samples);
  std::sort(samples.begin(), samples.end(), [](const ScoredSample& a, const ScoredSample& b) {
    return a.score < b.score;
  });
  Ks2Curve curve;
  std::size_t cp = 0;
  std::size_t cn = 0;
  curve.ks2 = -1.0;
  for (std::size_t i = 0; i < samples.size();) {
    const double t = samples[i].score;
    for (; i < samples.size() && samples[i].score == t; ++i) {
      (samples[i].label == Label::Goal ? cp : cn) += 1;
    }
    const double fp = static_cast<double>(cp) / pos;
    const double fn = static_cast<double>(cn) / neg;
    curve.thresholds.push_back(t);
    curve.cdf_positive.push_back(fp);
    curve.cdf_negative.push_back(fn);
    const double gap = std::abs(fp - fn);
    if (gap > curve.ks2) {
      curve.ks2 = gap;
      curve.ks2_threshold = t;
    }
  }
  return curve;
}

double folded_auc(const std::vector<double>& values, const std::vector<Label>& labels) {
  if (values.size() != labels.size()) throw std::invalid_argument("values and labels differ in length");
  std::vector<ScoredSample> samples;
  samples.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) samples.push_back({values[i], labels[i]});
  const double auc = roc_curve(std::move(samples)).auc;
  return std::max(auc, 1.0 - auc);
}

std::vector<FeatureRelevance> feature_relevance(const std::vector<KickScene>& scenes, const FieldConfig& field) {
  if (scenes.size() < 2) throw std::invalid_argument("feature_relevance needs at least two scenes");
  std::vector<std::vector<ScoredSample>> columns(kFeatureCount);
  for (const auto& s : scenes) {
    const FeatureVector f = extract_features(s, field);
    for (std::size_t i = 0; i < kFeatureCount; ++i) columns[i].push_back({f[i], s.label});
  }
  std::vector<FeatureRelevance> out;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const double auc = roc_curve(std::move(columns[i])).auc;
    out.push_back({FeatureVector::names()[i], auc, std::max(auc, 1.0 - auc)});
  }
  return out;
}

}  // namespace shotsel

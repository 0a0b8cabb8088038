#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shotsel/generator.hpp"
#include "shotsel/metrics.hpp"

using namespace shotsel;

namespace {

std::vector<ScoredSample> make(const std::vector<double>& pos, const std::vector<double>& neg) {
  std::vector<ScoredSample> out;
  for (double s : pos) out.push_back({s, Label::Goal});
  for (double s : neg) out.push_back({s, Label::NoGoal});
  return out;
}

// Small integer scores so ties are frequent and survive monotone transforms.
std::vector<ScoredSample> random_tied(Rng& rng) {
  std::uniform_int_distribution<int> n(2, 60);
  std::uniform_int_distribution<int> level(0, 9);
  std::vector<ScoredSample> out;
  const int count = n(rng);
  for (int i = 0; i < count; ++i) {
    const Label l = i % 2 == 0 ? Label::Goal : Label::NoGoal;
    out.push_back({static_cast<double>(level(rng) + (l == Label::Goal ? level(rng) : 0)), l});
  }
  return out;
}

}  // namespace

TEST_CASE("rank AUC examples") {
  CHECK(auc_rank(make({2, 3}, {1})) == 1.0);
  CHECK(auc_rank(make({1}, {1})) == 0.5);
  CHECK(auc_rank(make({1, 3}, {2})) == 0.5);
  CHECK_THROWS(auc_rank(make({1, 2}, {})));
}

TEST_CASE("ROC curve examples and invariants") {
  const auto perfect = roc_curve(make({0.8, 0.9}, {0.1, 0.2, 0.3}));
  CHECK(perfect.auc == 1.0);
  const auto flat = roc_curve(make({0.5, 0.5}, {0.5, 0.5, 0.5}));
  CHECK(flat.auc == 0.5);
  CHECK_THROWS(roc_curve(make({}, {1.0})));

  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_tied(rng);
    const auto roc = roc_curve(s);
    REQUIRE_FALSE(roc.points.empty());
    CHECK(roc.points.front().false_positive_rate == 0.0);
    CHECK(roc.points.front().true_positive_rate == 0.0);
    CHECK(roc.points.back().false_positive_rate == 1.0);
    CHECK(roc.points.back().true_positive_rate == 1.0);
    for (std::size_t k = 1; k < roc.points.size(); ++k) {
      CHECK(roc.points[k].false_positive_rate >= roc.points[k - 1].false_positive_rate);
      CHECK(roc.points[k].true_positive_rate >= roc.points[k - 1].true_positive_rate);
    }
    CHECK(std::abs(roc.auc - auc_rank(s)) <= 1e-9);
  }
}

TEST_CASE("KS2 examples") {
  const auto k = ks2_curve(make({0.2, 0.8}, {0.4}));
  CHECK(k.ks2 == doctest::Approx(0.5));
  CHECK(k.ks2_threshold == 0.2);
  CHECK(ks2_curve(make({0.1, 0.4, 0.4}, {0.4, 0.1, 0.4})).ks2 == 0.0);
  CHECK(ks2_curve(make({0.6, 0.7}, {0.1, 0.2})).ks2 == 1.0);
  CHECK_THROWS(ks2_curve(make({0.3}, {})));
}

TEST_CASE("KS2 matches the brute-force CDF gap") {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_tied(rng);
    const auto k = ks2_curve(s);
    const auto b = oracle::ks2_brute(s);
    CHECK(std::abs(k.ks2 - b.ks2) <= 1e-12);
    CHECK(k.ks2_threshold == b.threshold);
    for (std::size_t j = 1; j < k.thresholds.size(); ++j) {
      CHECK(k.thresholds[j] > k.thresholds[j - 1]);
      CHECK(k.cdf_positive[j] >= k.cdf_positive[j - 1]);
      CHECK(k.cdf_negative[j] >= k.cdf_negative[j - 1]);
    }
    CHECK(k.cdf_positive.back() == doctest::Approx(1.0));
    CHECK(k.cdf_negative.back() == doctest::Approx(1.0));
  }
}

TEST_CASE("monotone transforms and score reversal") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_tied(rng);
    auto t = s;
    auto r = s;
    for (auto& x : t) x.score = std::exp(0.3 * x.score) - 7.0;
    for (auto& x : r) x.score = -x.score;
    CHECK(roc_curve(t).auc == doctest::Approx(roc_curve(s).auc).epsilon(1e-12));
    CHECK(ks2_curve(t).ks2 == doctest::Approx(ks2_curve(s).ks2).epsilon(1e-12));
    CHECK(roc_curve(r).auc == doctest::Approx(1.0 - roc_curve(s).auc).epsilon(1e-12));
    CHECK(ks2_curve(r).ks2 == doctest::Approx(ks2_curve(s).ks2).epsilon(1e-12));
  }
}

TEST_CASE("single-column relevance") {
  std::vector<double> values;
  std::vector<Label> labels;
  for (int i = 0; i < 50; ++i) {
    const Label l = i % 2 ? Label::Goal : Label::NoGoal;
    labels.push_back(l);
    values.push_back(l == Label::Goal ? 1.0 : 0.0);
  }
  CHECK(folded_auc(values, labels) == 1.0);
  for (double& v : values) v = -v;
  CHECK(folded_auc(values, labels) == 1.0);
  CHECK_THROWS(folded_auc({1.0, 2.0}, {Label::Goal, Label::Goal}));
}

TEST_CASE("relevance of generated features") {
  const FieldConfig field;
  auto scenes = generate_synthetic_scenes(2000, GeneratorConfig{}, DynamicsConfig{}, field, AimConfig{}, 31);
  const auto rel = feature_relevance(scenes, field);
  REQUIRE(rel.size() == kFeatureCount);
  for (const auto& r : rel) {
    CHECK(r.folded_auc >= 0.5);
    CHECK(r.folded_auc == doctest::Approx(std::max(r.auc, 1.0 - r.auc)));
  }
  CHECK(rel[feature::kAngleBallKeeperDestiny].folded_auc >= 0.75);

  Rng rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> noise;
  std::vector<Label> labels;
  for (const auto& s : scenes) {
    noise.push_back(u(rng));
    labels.push_back(s.label);
  }
  const double noise_auc = folded_auc(noise, labels);
  CHECK(noise_auc >= 0.50);
  CHECK(noise_auc <= 0.55);
}

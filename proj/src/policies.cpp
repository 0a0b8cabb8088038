#include "shotsel/policies.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace shotsel {

void PolicyConfig::validate() const {
  if (!(p_goal_threshold > 0.0 && p_goal_threshold < 1.0)) {
    throw std::invalid_argument("p_goal_threshold must lie in (0, 1)");
  }
  if (!(score_threshold > 0.0 && score_threshold < 1.0)) {
    throw std::invalid_argument("score_threshold must lie in (0, 1)");
  }
}

StageOne stage_one_survivors(Vec2 ball, const FieldConfig& field, const AimConfig& aim, const PolicyConfig& policy) {
  StageOne out;
  if (!within_horizon(ball, field, aim)) {
    out.out_of_horizon = true;
    return out;
  }
  for (Vec2 t : discretize_targets(field, aim)) {
    const double p = p_goal({ball, t}, field, aim).p_goal;
    if (p >= policy.p_goal_threshold) out.survivors.push_back({t, p});
  }
  return out;
}

bool better_candidate(double va, Vec2 a, double vb, Vec2 b, const FieldConfig& field) {
  if (va != vb) return va > vb;
  const double ca = std::abs(a.y - field.goal_center().y);
  const double cb = std::abs(b.y - field.goal_center().y);
  if (ca != cb) return ca < cb;
  return a.y < b.y;
}

namespace {

// Picks the best candidate whose second-stage value passes `accept`.
template <typename ValueFn, typename AcceptFn>
std::pair<KickDecision, double> choose(const StageOne& stage, const FieldConfig& field, ValueFn value,
                                       AcceptFn accept) {
  KickDecision d;
  d.out_of_horizon = stage.out_of_horizon;
  double best = 0.0;
  for (const auto& c : stage.survivors) {
    const double v = value(c.target);
    if (!accept(v)) continue;
    if (!d.kick() || better_candidate(v, c.target, best, d.target, field)) {
      d.action = KickAction::Kick;
      d.target = c.target;
      d.p_goal = c.p_goal;
      best = v;
    }
  }
  return {d, best};
}

}  // namespace

KickDecision mlp_policy_decide(const KickScene& scene, const MlpParams& model, const FieldConfig& field,
                               const AimConfig& aim, const PolicyConfig& policy) {
  const StageOne stage = stage_one_survivors(scene.ball, field, aim, policy);
  auto [d, best] = choose(
      stage, field, [&](Vec2 t) { return score(forward(model, extract_features(scene, t, field))); },
      [&](double s) { return s > policy.score_threshold; });
  if (d.kick()) d.neural_score = best;
  return d;
}

LdaModel lda_train(const std::vector<KickScene>& scenes, const FieldConfig& /*field*/) {
  if (count_label(scenes, Label::Goal) == 0 || count_label(scenes, Label::NoGoal) == 0) {
    throw std::invalid_argument("lda_train needs both classes");
  }
  // Normal equations A^T A w = A^T y with rows (distance, angle, 1).
  std::array<std::array<double, 4>, 3> m{};
  for (const auto& s : scenes) {
    const std::array<double, 3> row = {distance(s.keeper, s.ball),
                                       angle_ball_keeper_destiny(s.ball, s.keeper, s.target), 1.0};
    const double y = s.label == Label::Goal ? 1.0 : -1.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
      m[i][3] += row[i] * y;
    }
  }
  double scale = 0.0;
  for (int i = 0; i < 3; ++i) scale = std::max(scale, std::abs(m[i][i]));
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (!(std::abs(m[pivot][col]) > 1e-12 * scale)) {
      throw std::runtime_error("lda_train: singular normal equations");
    }
    std::swap(m[col], m[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

KickDecision lda_policy_decide(const KickScene& scene, const LdaModel& model, const FieldConfig& field,
                               const AimConfig& aim, const PolicyConfig& policy) {
  const StageOne stage = stage_one_survivors(scene.ball, field, aim, policy);
  const double keeper_distance = distance(scene.keeper, scene.ball);
  auto [d, best] = choose(
      stage, field,
      [&](Vec2 t) {
        return model.discriminant(keeper_distance, angle_ball_keeper_destiny(scene.ball, scene.keeper, t));
      },
      [](double v) { return v > 0.0; });
  if (d.kick()) d.discriminant = best;
  return d;
}

KickDecision naive_center_policy(const KickScene& scene, const FieldConfig& field, const AimConfig& aim) {
  KickDecision d;
  if (!within_horizon(scene.ball, field, aim)) {
    d.out_of_horizon = true;
    return d;
  }
  d.action = KickAction::Kick;
  d.target = field.goal_center();
  d.p_goal = p_goal({scene.ball, d.target}, field, aim).p_goal;
  return d;
}

namespace {

class MlpPolicy final : public ShotPolicy {
 public:
  MlpPolicy(MlpParams model, FieldConfig field, AimConfig aim, PolicyConfig policy)
      : model_(std::move(model)), field_(field), aim_(aim), policy_(policy) {
    model_.validate();
  }
  KickDecision decide(const KickScene& scene) const override {
    return mlp_policy_decide(scene, model_, field_, aim_, policy_);
  }
  std::string name() const override { return "mlp"; }

 private:
  MlpParams model_;
  FieldConfig field_;
  AimConfig aim_;
  PolicyConfig policy_;
};

class LdaPolicy final : public ShotPolicy {
 public:
  LdaPolicy(LdaModel model, FieldConfig field, AimConfig aim, PolicyConfig policy)
      : model_(model), field_(field), aim_(aim), policy_(policy) {}
  KickDecision decide(const KickScene& scene) const override {
    return lda_policy_decide(scene, model_, field_, aim_, policy_);
  }
  std::string name() const override { return "lda"; }

 private:
  LdaModel model_;
  FieldConfig field_;
  AimConfig aim_;
  PolicyConfig policy_;
};

class NaiveCenterPolicy final : public ShotPolicy {
 public:
  NaiveCenterPolicy(FieldConfig field, AimConfig aim) : field_(field), aim_(aim) {}
  KickDecision decide(const KickScene& scene) const override { return naive_center_policy(scene, field_, aim_); }
  std::string name() const override { return "center"; }

 private:
  FieldConfig field_;
  AimConfig aim_;
};

}  // namespace

std::unique_ptr<ShotPolicy> make_mlp_policy(MlpParams model, FieldConfig field, AimConfig aim, PolicyConfig policy) {
  return std::make_unique<MlpPolicy>(std::move(model), field, aim, policy);
}

std::unique_ptr<ShotPolicy> make_lda_policy(LdaModel model, FieldConfig field, AimConfig aim, PolicyConfig policy) {
  return std::make_unique<LdaPolicy>(model, field, aim, policy);
}

std::unique_ptr<ShotPolicy> make_naive_center_policy(FieldConfig field, AimConfig aim) {
  return std::make_unique<NaiveCenterPolicy>(field, aim);
}

}  // namespace shotsel

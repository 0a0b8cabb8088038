#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shotsel/aim_model.hpp"
#include "shotsel/mlp.hpp"

namespace shotsel {

enum class KickAction { NoKick, Kick };

struct KickDecision {
  KickAction action = KickAction::NoKick;
  Vec2 target;                        // set when action == Kick
  std::optional<double> neural_score;  // MLP score of the chosen target
  std::optional<double> discriminant;  // LDA value of the chosen target
  std::optional<double> p_goal;        // first-stage probability of the chosen target
  bool out_of_horizon = false;         // ball too far for the aim model

  bool kick() const { return action == KickAction::Kick; }
};

struct PolicyConfig {
  double p_goal_threshold = 0.70;
  double score_threshold = 0.5;

  void validate() const;
};

/// A discretized target that passed the first-stage aim filter.
struct TargetCandidate {
  Vec2 target;
  double p_goal = 0.0;
};

struct StageOne {
  bool out_of_horizon = false;
  std::vector<TargetCandidate> survivors;  // in target order
};

/// Targets whose analytic on-goal probability reaches the threshold.
StageOne stage_one_survivors(Vec2 ball, const FieldConfig& field, const AimConfig& aim, const PolicyConfig& policy);

/// True when candidate `a` (with value `va`) beats `b` (with value `vb`):
/// higher value, then nearer the goal center, then smaller lateral coordinate.
bool better_candidate(double va, Vec2 a, double vb, Vec2 b, const FieldConfig& field);

/// Two-stage decision: aim filter, then the network score of each survivor
/// (must exceed score_threshold); kicks at the best-scoring target.
KickDecision mlp_policy_decide(const KickScene& scene, const MlpParams& model, const FieldConfig& field,
                               const AimConfig& aim, const PolicyConfig& policy);

/// Least-squares linear discriminant over (keeper distance to ball,
/// ball-keeper-target angle), fitted to labels +1 (GOAL) / -1 (NO_GOAL).
struct LdaModel {
  double weight_distance = 0.0;
  double weight_angle = 0.0;
  double bias = 0.0;

  double discriminant(double keeper_distance, double angle) const {
    return weight_distance * keeper_distance + weight_angle * angle + bias;
  }
};

/// Solves the 3x3 normal equations; throws std::runtime_error when singular.
LdaModel lda_train(const std::vector<KickScene>& scenes, const FieldConfig& field);

/// Same aim filter; the second stage kicks iff the discriminant is positive,
/// choosing the target with the largest discriminant.
KickDecision lda_policy_decide(const KickScene& scene, const LdaModel& model, const FieldConfig& field,
                               const AimConfig& aim, const PolicyConfig& policy);

/// Always shoots at the goal center while within the aim model's horizon.
KickDecision naive_center_policy(const KickScene& scene, const FieldConfig& field, const AimConfig& aim);

/// Uniform interface over the decision rules above.
class ShotPolicy {
 public:
  virtual ~ShotPolicy() = default;
  virtual KickDecision decide(const KickScene& scene) const = 0;
  virtual std::string name() const = 0;
};

std::unique_ptr<ShotPolicy> make_mlp_policy(MlpParams model, FieldConfig field, AimConfig aim, PolicyConfig policy);
std::unique_ptr<ShotPolicy> make_lda_policy(LdaModel model, FieldConfig field, AimConfig aim, PolicyConfig policy);
std::unique_ptr<ShotPolicy> make_naive_center_policy(FieldConfig field, AimConfig aim);

}  // namespace shotsel

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shotsel/generator.hpp"
#include "shotsel/policies.hpp"

using namespace shotsel;

namespace {

const FieldConfig kField;
const AimConfig kAim;
const PolicyConfig kPolicy;

// Network whose score is the same for every input: (tanh(b) - tanh(-b)) / 4 + 0.5.
MlpParams constant_score_net(double score_value) {
  MlpParams p = MlpParams::zeros({22, 1, 2});
  const double b = std::atanh(2.0 * (score_value - 0.5));
  p.layers[1].biases = {b, -b};
  return p;
}

// Network whose score depends only on the target lateral feature and hits
// `s_low` at y_low and `s_high` at y_high.
MlpParams lateral_net(double y_low, double s_low, double y_high, double s_high) {
  MlpParams p = MlpParams::zeros({22, 1, 2});
  p.layers[0].weight(feature::kTargetLateral, 0) = 0.1;
  const double h_low = std::tanh(0.1 * y_low);
  const double h_high = std::tanh(0.1 * y_high);
  const double z_low = std::atanh(2.0 * (s_low - 0.5));
  const double z_high = std::atanh(2.0 * (s_high - 0.5));
  const double v = (z_high - z_low) / (h_high - h_low);
  const double b = z_low - v * h_low;
  p.layers[1].weight(0, 0) = v;
  p.layers[1].weight(0, 1) = -v;
  p.layers[1].biases = {b, -b};
  return p;
}

KickScene scene_at(Vec2 ball) {
  KickScene s;
  s.ball = ball;
  s.attacker = ball - Vec2{0.5, 0.0};
  s.keeper = {kField.goal_line_x - 1.0, 0.0};
  s.kick_power = 95.0;
  s.target = kField.goal_center();
  return s;
}

MlpParams random_net(Rng& rng, const std::vector<KickScene>& scenes) {
  MlpParams p = MlpParams::random_uniform({22, 5, 2}, 1.5, rng);
  std::vector<std::vector<double>> xs;
  for (const auto& s : scenes) {
    const auto f = extract_features(s, kField);
    xs.emplace_back(f.values.begin(), f.values.end());
  }
  p.normalization = fit_normalization(xs);
  return p;
}

}  // namespace

TEST_CASE("no target passes the aim filter") {
  const KickScene far = scene_at({kField.goal_line_x - 43.4, 0.0});
  REQUIRE(within_horizon(far.ball, kField, kAim));
  const KickDecision d = mlp_policy_decide(far, constant_score_net(0.9), kField, kAim, kPolicy);
  CHECK_FALSE(d.kick());
  CHECK(stage_one_survivors(far.ball, kField, kAim, kPolicy).survivors.empty());
}

TEST_CASE("single survivor is kicked at") {
  const KickScene s = scene_at({kField.goal_line_x - 20.0, 0.0});
  const auto all = stage_one_survivors(s.ball, kField, kAim, PolicyConfig{0.01, 0.5});
  double center = 0.0;
  double next = 0.0;
  for (const auto& c : all.survivors) {
    if (c.target.y == 0.0) center = c.p_goal;
    if (std::abs(c.target.y) > 0.5 && std::abs(c.target.y) < 1.0) next = std::max(next, c.p_goal);
  }
  REQUIRE(center > next);
  const PolicyConfig only_center{0.5 * (center + next), 0.5};
  REQUIRE(stage_one_survivors(s.ball, kField, kAim, only_center).survivors.size() == 1);
  const KickDecision d = mlp_policy_decide(s, constant_score_net(0.6), kField, kAim, only_center);
  REQUIRE(d.kick());
  CHECK(d.target == kField.goal_center());
  CHECK(*d.neural_score == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(*d.p_goal >= only_center.p_goal_threshold);
}

TEST_CASE("best of two survivors is chosen") {
  AimConfig two = kAim;
  two.target_count = 2;
  const PolicyConfig loose{0.3, 0.5};
  const KickScene s = scene_at({kField.goal_line_x - 5.0, 0.0});
  const auto stage = stage_one_survivors(s.ball, kField, two, loose);
  REQUIRE(stage.survivors.size() == 2);
  const double y0 = stage.survivors[0].target.y;
  const double y1 = stage.survivors[1].target.y;
  SUBCASE("higher score on the left target") {
    const KickDecision d = mlp_policy_decide(s, lateral_net(y0, 0.7, y1, 0.9), kField, two, loose);
    REQUIRE(d.kick());
    CHECK(d.target.y == y1);
    CHECK(*d.neural_score == doctest::Approx(0.9).epsilon(1e-9));
  }
  SUBCASE("higher score on the right target") {
    const KickDecision d = mlp_policy_decide(s, lateral_net(y0, 0.9, y1, 0.7), kField, two, loose);
    REQUIRE(d.kick());
    CHECK(d.target.y == y0);
  }
  SUBCASE("both below the score threshold") {
    const KickDecision d = mlp_policy_decide(s, lateral_net(y0, 0.3, y1, 0.45), kField, two, loose);
    CHECK_FALSE(d.kick());
  }
}

TEST_CASE("ties go to the target nearest the center, then the smaller lateral coordinate") {
  const KickScene s = scene_at({kField.goal_line_x - 6.0, 0.0});
  const KickDecision odd = mlp_policy_decide(s, constant_score_net(0.8), kField, kAim, kPolicy);
  REQUIRE(odd.kick());
  CHECK(odd.target.y == 0.0);

  AimConfig even = kAim;
  even.target_count = 4;
  const KickDecision d = mlp_policy_decide(s, constant_score_net(0.8), kField, even, PolicyConfig{0.3, 0.5});
  REQUIRE(d.kick());
  const auto targets = discretize_targets(kField, even);
  CHECK(d.target.y == targets[1].y);
  CHECK(d.target.y < 0.0);

  CHECK(better_candidate(0.6, {52.5, 3.0}, 0.5, {52.5, 0.0}, kField));
  CHECK(better_candidate(0.5, {52.5, 1.0}, 0.5, {52.5, 2.0}, kField));
  CHECK(better_candidate(0.5, {52.5, -1.0}, 0.5, {52.5, 1.0}, kField));
  CHECK_FALSE(better_candidate(0.5, {52.5, 1.0}, 0.5, {52.5, -1.0}, kField));
}

TEST_CASE("out-of-horizon balls are not kicked and are flagged") {
  const KickScene s = scene_at({kField.goal_line_x - 44.5, 0.0});
  const KickDecision d = mlp_policy_decide(s, constant_score_net(0.9), kField, kAim, kPolicy);
  CHECK_FALSE(d.kick());
  CHECK(d.out_of_horizon);
  CHECK_FALSE(naive_center_policy(s, kField, kAim).kick());
  CHECK(lda_policy_decide(s, LdaModel{0.0, 0.0, 1.0}, kField, kAim, kPolicy).out_of_horizon);
}

TEST_CASE("decisions agree with a brute-force evaluation of every target") {
  const auto scenes = generate_synthetic_scenes(1000, GeneratorConfig{}, DynamicsConfig{}, kField, kAim, 41);
  Rng rng(1);
  const MlpParams net = random_net(rng, scenes);
  int kicks = 0;
  for (const auto& s : scenes) {
    const KickDecision got = mlp_policy_decide(s, net, kField, kAim, kPolicy);
    const KickDecision want = oracle::brute_force_mlp_decision(s, net, kField, kAim, kPolicy);
    REQUIRE(got.kick() == want.kick());
    if (got.kick()) {
      ++kicks;
      CHECK(got.target == want.target);
      CHECK(*got.neural_score == *want.neural_score);
      CHECK(*got.p_goal >= kPolicy.p_goal_threshold);
      CHECK(*got.neural_score > kPolicy.score_threshold);
    }
    CHECK(mlp_policy_decide(s, net, kField, kAim, kPolicy).target == got.target);
  }
  CHECK(kicks > 0);
  CHECK(kicks < 1000);
}

TEST_CASE("raising a threshold never creates a kick") {
  const auto scenes = generate_synthetic_scenes(300, GeneratorConfig{}, DynamicsConfig{}, kField, kAim, 43);
  Rng rng(2);
  const MlpParams net = random_net(rng, scenes);
  for (const auto& s : scenes) {
    bool kicked_before = true;
    for (double t : {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
      const bool kicked = mlp_policy_decide(s, net, kField, kAim, PolicyConfig{0.7, t}).kick();
      CHECK((kicked_before || !kicked));
      kicked_before = kicked;
    }
    kicked_before = true;
    for (double t : {0.5, 0.6, 0.7, 0.8, 0.9, 0.95}) {
      const bool kicked = mlp_policy_decide(s, net, kField, kAim, PolicyConfig{t, 0.5}).kick();
      CHECK((kicked_before || !kicked));
      kicked_before = kicked;
    }
  }
}

TEST_CASE("discriminant fitting") {
  Rng rng(3);
  std::uniform_real_distribution<double> angle(0.0, 0.5);
  auto with_keeper = [&](double dist, double ang, Label label) {
    KickScene s = scene_at({kField.goal_line_x - 15.0, 2.0});
    const double shot = Ray::through(s.ball, s.target).angle();
    s.keeper = s.ball + Vec2::polar(dist, shot + ang);
    s.label = label;
    return s;
  };

  SUBCASE("separable by keeper distance") {
    std::vector<KickScene> scenes;
    std::uniform_real_distribution<double> near(2.0, 6.0);
    std::uniform_real_distribution<double> far(9.0, 14.0);
    for (int i = 0; i < 100; ++i) {
      scenes.push_back(with_keeper(far(rng), angle(rng), Label::Goal));
      scenes.push_back(with_keeper(near(rng), angle(rng), Label::NoGoal));
    }
    const LdaModel m = lda_train(scenes, kField);
    CHECK(m.weight_distance > 0.0);
  }
  SUBCASE("no signal gives zero weights") {
    std::vector<KickScene> scenes;
    std::uniform_real_distribution<double> dist(2.0, 14.0);
    for (int i = 0; i < 100; ++i) {
      const double d = dist(rng);
      const double a = angle(rng);
      scenes.push_back(with_keeper(d, a, Label::Goal));
      scenes.push_back(with_keeper(d, a, Label::NoGoal));
    }
    const LdaModel m = lda_train(scenes, kField);
    CHECK(m.weight_distance == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(m.weight_angle == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(m.bias == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  }
  SUBCASE("three points are interpolated exactly") {
    const std::vector<KickScene> scenes = {with_keeper(1.0, 0.0, Label::Goal), with_keeper(2.0, 0.0, Label::NoGoal),
                                           with_keeper(1.0, 1.0, Label::NoGoal)};
    const LdaModel m = lda_train(scenes, kField);
    CHECK(m.weight_distance == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(m.weight_angle == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(m.bias == doctest::Approx(3.0).epsilon(1e-9));
  }
  SUBCASE("degenerate inputs") {
    const std::vector<KickScene> same = {with_keeper(3.0, 0.2, Label::Goal), with_keeper(3.0, 0.2, Label::NoGoal)};
    CHECK_THROWS(lda_train(same, kField));
    CHECK_THROWS(lda_train({with_keeper(3.0, 0.2, Label::Goal)}, kField));
  }
}

TEST_CASE("discriminant policy") {
  const KickScene s = scene_at({kField.goal_line_x - 10.0, 3.0});
  CHECK_FALSE(lda_policy_decide(s, LdaModel{0.0, 0.0, -1.0}, kField, kAim, kPolicy).kick());
  const KickDecision k = lda_policy_decide(s, LdaModel{0.0, 0.0, 1.0}, kField, kAim, kPolicy);
  REQUIRE(k.kick());
  CHECK(*k.discriminant == 1.0);

  const auto scenes = generate_synthetic_scenes(200, GeneratorConfig{}, DynamicsConfig{}, kField, kAim, 44);
  for (const auto& sc : scenes) {
    const auto stage = stage_one_survivors(sc.ball, kField, kAim, kPolicy);
    const KickDecision lda = lda_policy_decide(sc, LdaModel{0.0, 0.0, 1.0}, kField, kAim, kPolicy);
    const KickDecision mlp = mlp_policy_decide(sc, constant_score_net(0.8), kField, kAim, kPolicy);
    CHECK(lda.kick() == !stage.survivors.empty());
    CHECK(lda.kick() == mlp.kick());
    if (lda.kick()) CHECK(lda.target == mlp.target);
  }
}

TEST_CASE("center policy") {
  const KickScene s = scene_at({kField.goal_line_x - 12.0, -8.0});
  const KickDecision d = naive_center_policy(s, kField, kAim);
  REQUIRE(d.kick());
  CHECK(d.target == kField.goal_center());
  KickScene moved = s;
  moved.keeper = {kField.goal_line_x - 3.0, -4.0};
  CHECK(naive_center_policy(moved, kField, kAim).target == d.target);
  CHECK(make_naive_center_policy(kField, kAim)->decide(s).kick());
}

TEST_CASE("policy config validation") {
  CHECK_NOTHROW(kPolicy.validate());
  CHECK_THROWS(PolicyConfig{0.0, 0.5}.validate());
  CHECK_THROWS(PolicyConfig{0.7, 1.0}.validate());
}

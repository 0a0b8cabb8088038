#include "shotsel/generator.hpp"

#include <numbers>
#include <stdexcept>

namespace shotsel {

namespace {

constexpr int kMaxPlacementAttempts = 10000;

}  // namespace

void GeneratorConfig::validate() const {
  if (!(min_shot_distance > 0.0 && min_shot_distance < max_shot_distance)) {
    throw std::invalid_argument("generator: need 0 < min_shot_distance < max_shot_distance");
  }
  if (!(max_ball_lateral >= 0.0)) throw std::invalid_argument("generator: max_ball_lateral must be >= 0");
  if (!(keeper_min_advance >= 0.0 && keeper_min_advance <= keeper_max_advance)) {
    throw std::invalid_argument("generator: bad keeper advance range");
  }
  if (!(keeper_lateral_spread >= 0.0 && body_angle_spread >= 0.0)) {
    throw std::invalid_argument("generator: spreads must be >= 0");
  }
  if (max_defenders < 0 || static_cast<std::size_t>(max_defenders) > kMaxDefenders) {
    throw std::invalid_argument("generator: max_defenders must lie in [0, 10]");
  }
  if (!(min_kick_power >= 0.0 && min_kick_power <= max_kick_power)) {
    throw std::invalid_argument("generator: bad kick power range");
  }
  opponents.keeper.validate();
  opponents.defender.validate();
}

KickScene sample_scene(const GeneratorConfig& gen, const FieldConfig& field, const AimConfig& aim, Rng& rng) {
  using Uniform = std::uniform_real_distribution<double>;
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Vec2 goal = field.goal_center();

  KickScene s;
  bool placed = false;
  for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
    const double x = Uniform(field.goal_line_x - gen.max_shot_distance, field.goal_line_x)(rng);
    const double y = Uniform(-gen.max_ball_lateral, gen.max_ball_lateral)(rng);
    const Vec2 ball{x, y};
    const double d = distance(ball, goal);
    placed = d >= gen.min_shot_distance && d <= gen.max_shot_distance && field.inside_field(ball) &&
             within_horizon(ball, field, aim);
    if (placed) s.ball = ball;
  }
  if (!placed) throw std::invalid_argument("generator: sampling region for the ball is empty");

  const Vec2 to_goal = goal - s.ball;
  const double goal_dir = std::atan2(to_goal.y, to_goal.x);
  s.time = std::uniform_int_distribution<int>(0, 6000)(rng);
  s.ball_velocity = {0.0, 0.0};
  s.attacker = s.ball - Vec2::polar(0.5, goal_dir);
  s.attacker_body_angle = wrap_angle(goal_dir + gen.body_angle_spread * gauss(rng));

  const Vec2 out_dir = to_goal * (-1.0 / to_goal.norm());
  const Vec2 side{-out_dir.y, out_dir.x};
  const double advance = Uniform(gen.keeper_min_advance, gen.keeper_max_advance)(rng);
  s.keeper = goal + out_dir * std::min(advance, 0.8 * to_goal.norm()) + side * (gen.keeper_lateral_spread * gauss(rng));
  s.keeper.x = std::min(s.keeper.x, field.goal_line_x);

  const int n_def = std::uniform_int_distribution<int>(0, gen.max_defenders)(rng);
  for (int i = 0; i < n_def; ++i) {
    const double dx = Uniform(s.ball.x + 1.0, field.goal_line_x - 1.0)(rng);
    const double dy = Uniform(-gen.defender_lateral_extent, gen.defender_lateral_extent)(rng);
    s.defenders.push_back({dx, dy});
  }

  s.kick_power = Uniform(gen.min_kick_power, gen.max_kick_power)(rng);
  const double half = field.goal_width / 2.0 - aim.target_inset;
  s.target = {field.goal_line_x, Uniform(-half, half)(rng)};
  return s;
}

std::vector<KickScene> generate_synthetic_scenes(std::size_t n, const GeneratorConfig& gen,
                                                 const DynamicsConfig& dynamics, const FieldConfig& field,
                                                 const AimConfig& aim, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_synthetic_scenes: n must be >= 1");
  gen.validate();
  dynamics.validate();
  field.validate();
  std::vector<KickScene> scenes;
  scenes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, i));
    KickScene s = sample_scene(gen, field, aim, rng);
    const ShotTrace trace = simulate_shot(s, s.target, s.kick_power, gen.opponents, dynamics, field, rng);
    s.label = trace.result == ShotResult::Goal ? Label::Goal : Label::NoGoal;
    scenes.push_back(std::move(s));
  }
  return scenes;
}

}  // namespace shotsel

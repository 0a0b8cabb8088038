#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "shotsel/ball_dynamics.hpp"

using namespace shotsel;

namespace {

DynamicsConfig noiseless() {
  DynamicsConfig c;
  c.noise_coefficient = 0.0;
  return c;
}

double sample_std(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

TEST_CASE("noise-free step follows the motion equations") {
  Rng rng(1);
  const BallState s{{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
  const BallState n = step(s, noiseless(), rng);
  CHECK(n.position.x == doctest::Approx(1.0));
  CHECK(n.position.y == 0.0);
  CHECK(n.velocity.x == doctest::Approx(0.94));
  CHECK(n.velocity.y == 0.0);
  CHECK(n.acceleration == Vec2{0.0, 0.0});
}

TEST_CASE("ball at rest stays put and loses its acceleration") {
  Rng rng(1);
  const BallState s{{3.0, -2.0}, {0.0, 0.0}, {0.0, 0.0}};
  const BallState n = step(s, DynamicsConfig{}, rng);
  CHECK(n.position == s.position);
  CHECK(n.velocity == Vec2{0.0, 0.0});
  CHECK(n.acceleration == Vec2{0.0, 0.0});
}

TEST_CASE("noise per component never exceeds its bound") {
  const DynamicsConfig c;
  Rng rng(42);
  std::uniform_real_distribution<double> comp(-2.0, 2.0);
  for (int i = 0; i < 100000; ++i) {
    const BallState s{{0.0, 0.0}, {comp(rng), comp(rng)}, {comp(rng) * 0.5, comp(rng) * 0.5}};
    Vec2 base = s.velocity + s.acceleration;
    if (base.norm() > c.max_speed) base = base * (c.max_speed / base.norm());
    const double r = c.noise_coefficient * base.norm();
    const BallState n = step(s, c, rng);
    const Vec2 u = n.position - s.position;
    CHECK(std::abs(u.x - base.x) <= r);
    CHECK(std::abs(u.y - base.y) <= r);
    CHECK(n.velocity.norm() <= c.max_speed + 1e-12);
  }
}

TEST_CASE("zero-noise trajectory matches the geometric partial sums") {
  const DynamicsConfig c = noiseless();
  Rng rng(0);
  BallState s{{0.0, 0.0}, {2.0, 0.0}, {0.0, 0.0}};
  for (int n = 1; n <= 100; ++n) {
    s = step(s, c, rng);
    const double expected = 2.0 * (1.0 - std::pow(c.decay, n)) / (1.0 - c.decay);
    CHECK(s.position.x == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("same seed gives bit-identical trajectories") {
  const DynamicsConfig c;
  Rng a(99);
  Rng b(99);
  BallState sa = kick(BallState{}, 100.0, 0.3, c);
  BallState sb = sa;
  for (int i = 0; i < 200; ++i) {
    sa = step(sa, c, a);
    sb = step(sb, c, b);
    REQUIRE(sa.position == sb.position);
    REQUIRE(sa.velocity == sb.velocity);
  }
}

TEST_CASE("kick sets the acceleration") {
  const DynamicsConfig c;
  const BallState s{{1.0, 2.0}, {0.1, 0.0}, {0.0, 0.0}};
  CHECK(kick(s, 0.0, 1.0, c).acceleration == Vec2{0.0, 0.0});
  const BallState k = kick(s, 100.0, 0.0, c);
  CHECK(k.acceleration.x == doctest::Approx(2.7));
  CHECK(k.acceleration.y == doctest::Approx(0.0));
  CHECK(k.position == s.position);
  CHECK(k.velocity == s.velocity);
  const BallState up = kick(s, 40.0, std::numbers::pi / 2.0, c);
  CHECK(up.acceleration.x == doctest::Approx(0.0).scale(1.0));
  CHECK(up.acceleration.y == doctest::Approx(0.027 * 40.0));
  CHECK_THROWS_AS(kick(s, -1.0, 0.0, c), DomainError);
  CHECK_THROWS_AS(kick(s, 100.5, 0.0, c), DomainError);
}

TEST_CASE("rollout examples") {
  const FieldConfig f;
  Rng rng(3);
  SUBCASE("straight noise-free shot lands on its aim") {
    const BallState s{{30.0, 2.5}, {0.0, 0.0}, {2.7, 0.0}};
    const CrossingOutcome out = rollout_to_goal_line(s, noiseless(), f, rng);
    CHECK(out.crossed);
    CHECK(out.lateral_at_goal_line == 2.5);
  }
  SUBCASE("dead ball stops in one step") {
    const CrossingOutcome out = rollout_to_goal_line(BallState{{10.0, 0.0}, {}, {}}, DynamicsConfig{}, f, rng);
    CHECK_FALSE(out.crossed);
    CHECK(out.steps_taken == 1);
  }
  SUBCASE("slow ball stops short") {
    const CrossingOutcome out = rollout_to_goal_line(BallState{{0.0, 0.0}, {0.5, 0.0}, {}}, noiseless(), f, rng);
    CHECK_FALSE(out.crossed);
  }
  SUBCASE("interpolated crossing") {
    CHECK(crossing_lateral({50.0, 0.0}, {54.0, 4.0}, 52.5) == doctest::Approx(2.5));
  }
}

TEST_CASE("lateral spread grows with shot distance") {
  const FieldConfig f;
  const DynamicsConfig c;
  double previous = 0.0;
  for (double d : {5.0, 10.0, 15.0, 20.0, 25.0}) {
    Rng rng(static_cast<std::uint64_t>(d));
    std::vector<double> lateral;
    for (int i = 0; i < 10000; ++i) {
      const BallState s = kick(BallState{{f.goal_line_x - d, 0.0}, {}, {}}, 100.0, 0.0, c);
      const CrossingOutcome out = rollout_to_goal_line(s, c, f, rng);
      REQUIRE(out.crossed);
      lateral.push_back(out.lateral_at_goal_line);
    }
    const double sd = sample_std(lateral);
    CHECK(sd > previous);
    previous = sd;
  }
}

TEST_CASE("travel range") {
  CHECK(travel_range(1.0, 0.94) == doctest::Approx(16.666666666666668).epsilon(1e-12));
  CHECK(travel_range(0.0, 0.94) == 0.0);
  CHECK_THROWS_AS(travel_range(1.0, 1.0), DomainError);

  const DynamicsConfig c = noiseless();
  Rng rng(0);
  BallState s{{0.0, 0.0}, {1.0, 0.0}, {}};
  for (int i = 0; i < 2000; ++i) s = step(s, c, rng);
  CHECK(s.position.x == doctest::Approx(travel_range(1.0, c.decay)).epsilon(1e-6));
}

TEST_CASE("dynamics config validation") {
  DynamicsConfig c;
  CHECK_NOTHROW(c.validate());
  c.decay = 1.0;
  CHECK_THROWS(c.validate());
  c = DynamicsConfig{};
  c.noise_coefficient = -0.1;
  CHECK_THROWS(c.validate());
}

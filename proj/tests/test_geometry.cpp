#include <doctest.h>

#include <numbers>
#include <random>

#include "shotsel/geometry.hpp"

using namespace shotsel;

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 rotate(Vec2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

}  // namespace

TEST_CASE("opening angle from 10 m in front of the goal center") {
  const FieldConfig f;
  const Vec2 origin{f.goal_line_x - 10.0, 0.0};
  const double expected = 2.0 * std::atan(7.01 / 10.0);
  CHECK(opening_angle(origin, f.left_post(), f.right_post()) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(1.2227).epsilon(1e-4));
}

TEST_CASE("opening angle degenerate configurations") {
  SUBCASE("collinear with origin outside the segment") {
    CHECK(opening_angle({0.0, 10.0}, {0.0, 7.0}, {0.0, -7.0}) == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("origin between the posts") {
    CHECK(opening_angle({0.0, 1.0}, {0.0, 7.0}, {0.0, -7.0}) == doctest::Approx(kPi));
  }
  SUBCASE("origin on a post") {
    CHECK_THROWS_AS(opening_angle({0.0, 7.0}, {0.0, 7.0}, {0.0, -7.0}), DomainError);
    CHECK_THROWS_AS(opening_angle({0.0, -7.0}, {0.0, 7.0}, {0.0, -7.0}), DomainError);
  }
}

TEST_CASE("opening angle is invariant under rigid motions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 o{coord(rng), coord(rng)};
    const Vec2 a{coord(rng), coord(rng)};
    const Vec2 b{coord(rng), coord(rng)};
    const double theta = angle(rng);
    const Vec2 shift{coord(rng), coord(rng)};
    const double before = opening_angle(o, a, b);
    const double after = opening_angle(rotate(o, theta) + shift, rotate(a, theta) + shift, rotate(b, theta) + shift);
    CHECK(after == doctest::Approx(before).epsilon(1e-9));
    CHECK(before >= 0.0);
    CHECK(before <= kPi);
  }
}

TEST_CASE("signed offset examples") {
  const Ray line({0.0, 0.0}, {1.0, 0.0});
  CHECK(signed_offset(line, {5.0, 3.0}) == doctest::Approx(3.0));
  CHECK(signed_offset(line, {5.0, 0.0}) == 0.0);
  CHECK(signed_offset(line, {5.0, -2.0}) == doctest::Approx(-2.0));
}

TEST_CASE("signed offset properties") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-30.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 origin{coord(rng), coord(rng)};
    Vec2 dir{coord(rng), coord(rng)};
    if (dir.norm() < 1e-6) continue;
    const Ray line(origin, dir);
    const Vec2 p{coord(rng), coord(rng)};
    const Vec2 u = line.direction();
    const Vec2 foot = origin + u * (p - origin).dot(u);
    const Vec2 mirrored = foot * 2.0 - p;
    CHECK(signed_offset(line, mirrored) == doctest::Approx(-signed_offset(line, p)).epsilon(1e-9).scale(1.0));
    CHECK(std::abs(signed_offset(line, p)) <= (p - origin).norm() + 1e-12);
  }
}

TEST_CASE("ray direction is unit length and zero direction is rejected") {
  const Ray r({1.0, 2.0}, {3.0, 4.0});
  CHECK(r.direction().norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.at(5.0).x == doctest::Approx(4.0));
  CHECK(r.at(5.0).y == doctest::Approx(6.0));
  CHECK_THROWS_AS(Ray({0.0, 0.0}, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Ray({0.0, 0.0}, {std::nan(""), 1.0}), DomainError);
}

TEST_CASE("field config defaults and validation") {
  FieldConfig f;
  CHECK_NOTHROW(f.validate());
  CHECK(f.left_post().y == doctest::Approx(7.01));
  CHECK(f.right_post().y == doctest::Approx(-7.01));
  CHECK(f.goal_line_x == doctest::Approx(f.field_length / 2.0));
  f.goal_width = 80.0;
  CHECK_THROWS(f.validate());
  f = FieldConfig{};
  f.goal_line_x = 50.0;
  CHECK_THROWS(f.validate());
  f = FieldConfig{};
  f.penalty_area_depth = -1.0;
  CHECK_THROWS(f.validate());
}

TEST_CASE("distance to segment and angle wrapping") {
  CHECK(distance_to_segment({0.0, 1.0}, {-1.0, 0.0}, {1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(distance_to_segment({3.0, 4.0}, {0.0, 0.0}, {0.0, 0.0}) == doctest::Approx(5.0));
  CHECK(distance_to_segment({4.0, 0.0}, {-1.0, 0.0}, {1.0, 0.0}) == doctest::Approx(3.0));
  CHECK(wrap_angle(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(0.25) == doctest::Approx(0.25));
}

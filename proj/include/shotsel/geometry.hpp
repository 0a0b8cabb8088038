#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace shotsel {

/// Raised when an operation is evaluated outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Planar vector in field coordinates (meters). x runs along the pitch with
/// the opponent goal at positive x; y is lateral, positive to the attacker's left.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }

  static Vec2 polar(double length, double angle) {
    return {length * std::cos(angle), length * std::sin(angle)};
  }
};

inline constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Half-line with a unit direction.
class Ray {
 public:
  /// Throws DomainError if `direction` is zero or non-finite.
  Ray(Vec2 origin, Vec2 direction);

  static Ray through(Vec2 origin, Vec2 point) { return Ray(origin, point - origin); }

  Vec2 origin() const { return origin_; }
  Vec2 direction() const { return direction_; }
  double angle() const { return std::atan2(direction_.y, direction_.x); }
  Vec2 at(double t) const { return origin_ + direction_ * t; }

 private:
  Vec2 origin_;
  Vec2 direction_;
};

/// Pitch and goal dimensions. Defaults follow the usual simulated-soccer
/// pitch: 105 x 68 m, 14.02 m goal, 16.5 x 40.32 m penalty area.
struct FieldConfig {
  double field_length = 105.0;
  double field_width = 68.0;
  double goal_width = 14.02;
  double goal_line_x = 52.5;
  double penalty_area_depth = 16.5;
  double penalty_area_width = 40.32;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;

  /// The post on the attacker's left (positive y).
  Vec2 left_post() const { return {goal_line_x, goal_width / 2.0}; }
  Vec2 right_post() const { return {goal_line_x, -goal_width / 2.0}; }
  Vec2 goal_center() const { return {goal_line_x, 0.0}; }

  bool inside_field(Vec2 p) const {
    return std::abs(p.x) <= field_length / 2.0 && std::abs(p.y) <= field_width / 2.0;
  }
  bool inside_penalty_band(double y) const { return std::abs(y) <= penalty_area_width / 2.0; }
};

/// Unsigned angle at `origin` between the rays towards the two posts, in [0, pi].
double opening_angle(Vec2 origin, Vec2 post_left, Vec2 post_right);

/// Perpendicular distance from `point` to the infinite line carrying `line`;
/// positive when the point lies to the left of the direction of travel.
double signed_offset(const Ray& line, Vec2 point);

/// Distance from `p` to the closed segment [a, b].
double distance_to_segment(Vec2 p, Vec2 a, Vec2 b);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double radians);

}  // namespace shotsel

#include "shotsel/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace shotsel {

Ray::Ray(Vec2 origin, Vec2 direction) : origin_(origin) {
  const double len = direction.norm();
  if (!origin.finite() || !direction.finite() || !(len > 0.0)) {
    throw DomainError("ray direction must be finite and non-zero");
  }
  direction_ = direction * (1.0 / len);
}

void FieldConfig::validate() const {
  if (!(field_length > 0 && field_width > 0 && goal_width > 0 && penalty_area_depth > 0 &&
        penalty_area_width > 0)) {
    throw std::invalid_argument("field dimensions must be positive");
  }
  if (!(goal_width < field_width)) {
    throw std::invalid_argument("goal_width must be smaller than field_width");
  }
  if (std::abs(goal_line_x - field_length / 2.0) > 1e-9) {
    throw std::invalid_argument("goal_line_x must equal field_length / 2");
  }
}

double opening_angle(Vec2 origin, Vec2 post_left, Vec2 post_right) {
  if (!origin.finite() || !post_left.finite() || !post_right.finite()) {
    throw DomainError("opening_angle: non-finite input");
  }
  const Vec2 a = post_left - origin;
  const Vec2 b = post_right - origin;
  if (a.norm() == 0.0 || b.norm() == 0.0) {
    throw DomainError("opening_angle: origin coincides with a post");
  }
  // atan2 of |cross| and dot is well conditioned near 0 and pi.
  return std::atan2(std::abs(a.cross(b)), a.dot(b));
}

double signed_offset(const Ray& line, Vec2 point) {
  if (!point.finite()) throw DomainError("signed_offset: non-finite point");
  return line.direction().cross(point - line.origin());
}

double distance_to_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double wrap_angle(double radians) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(radians, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

}  // namespace shotsel

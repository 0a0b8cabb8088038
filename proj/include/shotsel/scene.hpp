#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shotsel/geometry.hpp"

namespace shotsel {

enum class Label { NoGoal = 0, Goal = 1 };

std::string_view to_string(Label label);
Label parse_label(std::string_view text);

inline constexpr std::size_t kMaxDefenders = 10;

/// Snapshot of the world at the moment a shot is taken, with its outcome.
/// Coordinates are normalized so the opponent goal lies at positive x.
struct KickScene {
  int time = 0;
  Vec2 ball;
  Vec2 ball_velocity;
  Vec2 attacker;
  double attacker_body_angle = 0.0;  // radians
  Vec2 keeper;
  std::vector<Vec2> defenders;  // at most kMaxDefenders, keeper not included
  double kick_power = 0.0;
  Vec2 target;  // aim point on the goal line
  Label label = Label::NoGoal;

  bool operator==(const KickScene&) const = default;
};

/// Throws std::invalid_argument if the scene violates its invariants
/// (non-finite values, ball off the field, too many defenders).
void validate_scene(const KickScene& scene, const FieldConfig& field);

/// Reflects a scene across the field's center line (y -> -y).
KickScene mirror_scene(const KickScene& scene);

/// Malformed scene or model input, located by 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Column names of the scene CSV, in file order.
const std::vector<std::string>& scene_csv_header();

void write_scenes(std::ostream& out, const std::vector<KickScene>& scenes);
std::vector<KickScene> read_scenes(std::istream& in, const FieldConfig& field);

void save_scenes(const std::vector<KickScene>& scenes, const std::filesystem::path& path);
std::vector<KickScene> load_scenes(const std::filesystem::path& path, const FieldConfig& field);

struct DatasetSplit {
  std::vector<KickScene> train;
  std::vector<KickScene> validation;
  std::vector<KickScene> test;
  std::uint64_t seed = 0;
};

/// Seeded shuffle then a 50/25/25 contiguous partition. Needs >= 4 scenes.
DatasetSplit split_dataset(std::vector<KickScene> scenes, std::uint64_t seed);

/// Replicates the minority class (whole copies, then a seeded sample without
/// replacement for the remainder) until both classes have equal counts.
std::vector<KickScene> balance_by_replication(const std::vector<KickScene>& train, std::uint64_t seed);

std::size_t count_label(const std::vector<KickScene>& scenes, Label label);

}  // namespace shotsel

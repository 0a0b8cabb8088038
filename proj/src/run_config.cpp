#include "shotsel/run_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "shotsel/scene.hpp"

namespace shotsel {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw std::invalid_argument(std::string(key) + ": expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view v) {
  Int out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument(std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::string show(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

InterceptionModel& eval_opponents(RunConfig& c) {
  if (!c.evaluation_opponents) c.evaluation_opponents = c.generator.opponents;
  return *c.evaluation_opponents;
}

struct Entry {
  std::string_view key;
  std::function<void(RunConfig&, std::string_view, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define REAL(name, expr)                                                                         \
  Entry {                                                                                        \
    name, [](RunConfig& c, std::string_view k, std::string_view v) { expr = to_double(k, v); }, \
        [](const RunConfig& c) { return show(expr); }                                            \
  }
#define INTEGER(name, type, expr)                                                                  \
  Entry {                                                                                          \
    name, [](RunConfig& c, std::string_view k, std::string_view v) { expr = to_int<type>(k, v); }, \
        [](const RunConfig& c) { return std::to_string(expr); }                                    \
  }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      INTEGER("run.seed", std::uint64_t, c.seed),
      REAL("field.field_length", c.field.field_length),
      REAL("field.field_width", c.field.field_width),
      REAL("field.goal_width", c.field.goal_width),
      REAL("field.goal_line_x", c.field.goal_line_x),
      REAL("field.penalty_area_depth", c.field.penalty_area_depth),
      REAL("field.penalty_area_width", c.field.penalty_area_width),
      REAL("dynamics.decay", c.dynamics.decay),
      REAL("dynamics.noise_coefficient", c.dynamics.noise_coefficient),
      REAL("dynamics.max_speed", c.dynamics.max_speed),
      REAL("dynamics.kick_power_rate", c.dynamics.kick_power_rate),
      REAL("dynamics.max_power", c.dynamics.max_power),
      REAL("aim.sigma_coefficient", c.aim.sigma_coefficient),
      REAL("aim.sigma_horizon", c.aim.sigma_horizon),
      // Shared with the policy's first stage.
      Entry{"aim.p_goal_threshold",
            [](RunConfig& c, std::string_view k, std::string_view v) {
              c.aim.p_goal_threshold = c.policy.p_goal_threshold = to_double(k, v);
            },
            [](const RunConfig& c) { return show(c.aim.p_goal_threshold); }},
      INTEGER("aim.target_count", int, c.aim.target_count),
      REAL("aim.target_inset", c.aim.target_inset),
      REAL("policy.score_threshold", c.policy.score_threshold),
      REAL("train.learning_rate", c.train.learning_rate),
      INTEGER("train.max_epochs", std::size_t, c.train.max_epochs),
      Entry{"train.patience",
            [](RunConfig& c, std::string_view k, std::string_view v) {
              c.train.patience = v == "inf" ? TrainConfig::kNoPatienceLimit : to_int<std::size_t>(k, v);
            },
            [](const RunConfig& c) {
              return c.train.patience == TrainConfig::kNoPatienceLimit ? std::string("inf")
                                                                       : std::to_string(c.train.patience);
            }},
      REAL("train.init_half_range", c.train.init_half_range),
      INTEGER("train.hidden_units", std::size_t, c.train.hidden_sizes.at(0)),
      Entry{"train.failure_rule",
            [](RunConfig& c, std::string_view k, std::string_view v) {
              if (v == "best") {
                c.train.failure_rule = FailureRule::BestSoFar;
              } else if (v == "previous") {
                c.train.failure_rule = FailureRule::Previous;
              } else {
                throw std::invalid_argument(std::string(k) + ": expected 'best' or 'previous'");
              }
            },
            [](const RunConfig& c) {
              return std::string(c.train.failure_rule == FailureRule::BestSoFar ? "best" : "previous");
            }},
      REAL("keeper.max_speed", c.generator.opponents.keeper.max_speed),
      INTEGER("keeper.reaction_delay", int, c.generator.opponents.keeper.reaction_delay),
      REAL("keeper.catch_radius", c.generator.opponents.keeper.catch_radius),
      REAL("keeper.positioning_noise", c.generator.opponents.keeper.positioning_noise),
      REAL("defender.max_speed", c.generator.opponents.defender.max_speed),
      INTEGER("defender.reaction_delay", int, c.generator.opponents.defender.reaction_delay),
      REAL("defender.intercept_radius", c.generator.opponents.defender.intercept_radius),
      REAL("generator.min_shot_distance", c.generator.min_shot_distance),
      REAL("generator.max_shot_distance", c.generator.max_shot_distance),
      REAL("generator.max_ball_lateral", c.generator.max_ball_lateral),
      REAL("generator.keeper_min_advance", c.generator.keeper_min_advance),
      REAL("generator.keeper_max_advance", c.generator.keeper_max_advance),
      REAL("generator.keeper_lateral_spread", c.generator.keeper_lateral_spread),
      INTEGER("generator.max_defenders", int, c.generator.max_defenders),
      REAL("generator.defender_lateral_extent", c.generator.defender_lateral_extent),
      REAL("generator.min_kick_power", c.generator.min_kick_power),
      REAL("generator.max_kick_power", c.generator.max_kick_power),
      REAL("generator.body_angle_spread", c.generator.body_angle_spread),
      INTEGER("experiment.games", std::size_t, c.games),
      INTEGER("experiment.shots_per_game", std::size_t, c.shots_per_game),
  };
  return table;
}

#undef REAL
#undef INTEGER

// Evaluation-keeper keys are optional and only rendered when set.
bool set_eval_keeper(RunConfig& c, std::string_view key, std::string_view v) {
  constexpr std::string_view prefix = "eval_keeper.";
  if (!key.starts_with(prefix)) return false;
  const std::string_view name = key.substr(prefix.size());
  KeeperModel& k = eval_opponents(c).keeper;
  if (name == "max_speed") {
    k.max_speed = to_double(key, v);
  } else if (name == "reaction_delay") {
    k.reaction_delay = to_int<int>(key, v);
  } else if (name == "catch_radius") {
    k.catch_radius = to_double(key, v);
  } else if (name == "positioning_noise") {
    k.positioning_noise = to_double(key, v);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
  return true;
}

}  // namespace

void RunConfig::set(std::string_view dotted_key, std::string_view value) {
  value = trim(value);
  if (set_eval_keeper(*this, dotted_key, value)) return;
  for (const auto& e : entries()) {
    if (e.key == dotted_key) {
      e.set(*this, dotted_key, value);
      return;
    }
  }
  throw std::invalid_argument("unknown config key '" + std::string(dotted_key) + "'");
}

void RunConfig::validate() const {
  field.validate();
  dynamics.validate();
  aim.validate();
  policy.validate();
  train.validate();
  generator.validate();
  if (evaluation_opponents) evaluation_opponents->keeper.validate();
  if (games < 1) throw std::invalid_argument("experiment.games must be >= 1");
}

ExperimentConfig RunConfig::experiment() const {
  ExperimentConfig e;
  e.games = games;
  e.shots_per_game = shots_per_game;
  e.seed = seed;
  e.scenes = generator;
  e.evaluation_opponents = evaluation_opponents;
  return e;
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig config;
  std::string section;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, 1, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, 1, "expected 'key = value'");
    if (section.empty()) throw ParseError(line_no, 1, "key outside of a [section]");
    const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
    try {
      config.set(key, line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, eq + 2, e.what());
    }
  }
  config.validate();
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  return parse_run_config(in);
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("override '" + std::string(assignment) + "' is not of the form section.key=value");
  }
  config.set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

std::string default_config_text() {
  const RunConfig c;
  std::ostringstream out;
  std::string_view current;
  for (const auto& e : entries()) {
    const auto dot = e.key.find('.');
    const std::string_view section = e.key.substr(0, dot);
    if (section != current) {
      out << (current.empty() ? "" : "\n") << '[' << section << "]\n";
      current = section;
    }
    out << e.key.substr(dot + 1) << " = " << e.get(c) << '\n';
  }
  return out.str();
}

}  // namespace shotsel

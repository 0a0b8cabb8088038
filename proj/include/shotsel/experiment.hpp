#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shotsel/generator.hpp"
#include "shotsel/policies.hpp"

namespace shotsel {

struct EpisodeOutcome {
  bool kicked = false;
  ShotResult result = ShotResult::NoKick;
  int steps = 0;
  KickDecision decision;
};

/// Lets `policy` decide on the scene and, on a kick, plays the shot out
/// against the opponents. Deterministic for a given rng state.
EpisodeOutcome run_episode(const ShotPolicy& policy, const KickScene& scene, const InterceptionModel& opponents,
                           const DynamicsConfig& dynamics, const FieldConfig& field, Rng& rng);

/// Table-style aggregate over a set of games for one policy.
struct MatchStats {
  std::size_t games = 0;
  std::size_t kicks = 0;
  double kicks_mean_per_game = 0.0;
  double kicks_std = 0.0;
  std::size_t goals = 0;
  double goals_mean_per_game = 0.0;
  double goals_std = 0.0;
  std::optional<double> effectiveness;  // goals / kicks, absent with no kicks
  std::size_t wins = 0;
  std::size_t losses = 0;
  std::size_t draws = 0;

  bool operator==(const MatchStats&) const = default;
};

struct GameLog {
  std::size_t kicks_a = 0;
  std::size_t goals_a = 0;
  std::size_t kicks_b = 0;
  std::size_t goals_b = 0;
};

/// Builds MatchStats for side A (or B when `side_b`) from per-game logs.
/// Standard deviations are sample (n - 1) deviations.
MatchStats aggregate_stats(const std::vector<GameLog>& games, bool side_b);

struct ExperimentConfig {
  std::size_t games = 100;
  std::size_t shots_per_game = 10;
  std::uint64_t seed = 0;
  GeneratorConfig scenes;
  /// Opponents faced during evaluation; defaults to the generator's.
  std::optional<InterceptionModel> evaluation_opponents;
};

struct ExperimentResult {
  MatchStats a;
  MatchStats b;
  std::vector<GameLog> games;
};

/// Paired comparison: in every game both policies face the same scenes and
/// the same random stream for each shot. Goals per game decide the result.
/// When `event_log` is set, one JSON object per episode is written to it.
ExperimentResult run_experiment(const ShotPolicy& policy_a, const ShotPolicy& policy_b,
                                const ExperimentConfig& config, const DynamicsConfig& dynamics,
                                const FieldConfig& field, const AimConfig& aim, std::ostream* event_log = nullptr);

enum class ReportFormat { Text, Csv, Json };

ReportFormat parse_report_format(std::string_view name);

/// Renders the two policies side by side, one row per statistic.
std::string render_report(const MatchStats& a, const MatchStats& b, std::string_view name_a,
                          std::string_view name_b, ReportFormat format);

/// Reads back the two MatchStats from a JSON report.
std::pair<MatchStats, MatchStats> parse_json_report(std::string_view json);

}  // namespace shotsel

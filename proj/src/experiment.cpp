#include "shotsel/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace shotsel {

using nlohmann::json;

EpisodeOutcome run_episode(const ShotPolicy& policy, const KickScene& scene, const InterceptionModel& opponents,
                           const DynamicsConfig& dynamics, const FieldConfig& field, Rng& rng) {
  EpisodeOutcome out;
  out.decision = policy.decide(scene);
  if (!out.decision.kick()) return out;
  out.kicked = true;
  const ShotTrace trace = simulate_shot(scene, out.decision.target, scene.kick_power, opponents, dynamics, field, rng);
  out.result = trace.result;
  out.steps = trace.steps;
  return out;
}

MatchStats aggregate_stats(const std::vector<GameLog>& games, bool side_b) {
  MatchStats s;
  s.games = games.size();
  if (games.empty()) return s;
  std::vector<double> kicks;
  std::vector<double> goals;
  for (const auto& g : games) {
    const std::size_t k = side_b ? g.kicks_b : g.kicks_a;
    const std::size_t mine = side_b ? g.goals_b : g.goals_a;
    const std::size_t theirs = side_b ? g.goals_a : g.goals_b;
    s.kicks += k;
    s.goals += mine;
    kicks.push_back(static_cast<double>(k));
    goals.push_back(static_cast<double>(mine));
    if (mine > theirs) {
      ++s.wins;
    } else if (mine < theirs) {
      ++s.losses;
    } else {
      ++s.draws;
    }
  }
  auto mean_std = [](const std::vector<double>& v, double& mean, double& stddev) {
    double sum = 0.0;
    for (double x : v) sum += x;
    mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    stddev = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  };
  mean_std(kicks, s.kicks_mean_per_game, s.kicks_std);
  mean_std(goals, s.goals_mean_per_game, s.goals_std);
  if (s.kicks > 0) s.effectiveness = static_cast<double>(s.goals) / static_cast<double>(s.kicks);
  return s;
}

ExperimentResult run_experiment(const ShotPolicy& policy_a, const ShotPolicy& policy_b,
                                const ExperimentConfig& config, const DynamicsConfig& dynamics,
                                const FieldConfig& field, const AimConfig& aim, std::ostream* event_log) {
  if (config.games < 1) throw std::invalid_argument("run_experiment: games must be >= 1");
  config.scenes.validate();
  const InterceptionModel& opponents = config.evaluation_opponents.value_or(config.scenes.opponents);

  ExperimentResult result;
  result.games.resize(config.games);
  for (std::size_t g = 0; g < config.games; ++g) {
    GameLog& log = result.games[g];
    for (std::size_t k = 0; k < config.shots_per_game; ++k) {
      const std::uint64_t episode_seed = derive_seed(config.seed, g * config.shots_per_game + k);
      Rng scene_rng(episode_seed);
      const KickScene scene = sample_scene(config.scenes, field, aim, scene_rng);
      const std::uint64_t shot_seed = derive_seed(episode_seed, 1);

      Rng rng_a(shot_seed);
      const EpisodeOutcome a = run_episode(policy_a, scene, opponents, dynamics, field, rng_a);
      Rng rng_b(shot_seed);
      const EpisodeOutcome b = run_episode(policy_b, scene, opponents, dynamics, field, rng_b);

      log.kicks_a += a.kicked;
      log.goals_a += a.result == ShotResult::Goal;
      log.kicks_b += b.kicked;
      log.goals_b += b.result == ShotResult::Goal;

      if (event_log) {
        auto entry = [](const EpisodeOutcome& e) {
          json j = {{"kicked", e.kicked}, {"result", std::string(to_string(e.result))}, {"steps", e.steps}};
          if (e.kicked) j["target_y"] = e.decision.target.y;
          if (e.decision.p_goal) j["p_goal"] = *e.decision.p_goal;
          if (e.decision.neural_score) j["score"] = *e.decision.neural_score;
          if (e.decision.discriminant) j["discriminant"] = *e.decision.discriminant;
          return j;
        };
        const json line = {{"game", g},
                           {"shot", k},
                           {"ball", {scene.ball.x, scene.ball.y}},
                           {"keeper", {scene.keeper.x, scene.keeper.y}},
                           {"defenders", scene.defenders.size()},
                           {policy_a.name() + "_a", entry(a)},
                           {policy_b.name() + "_b", entry(b)}};
        *event_log << line.dump() << '\n';
      }
    }
  }
  result.a = aggregate_stats(result.games, false);
  result.b = aggregate_stats(result.games, true);
  return result;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "text") return ReportFormat::Text;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "' (expected text, csv or json)");
}

namespace {

std::string exact(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

struct Row {
  std::string_view label;
  std::string a;
  std::string b;
};

std::vector<Row> rows(const MatchStats& a, const MatchStats& b, bool rounded) {
  auto real = [&](double v, int digits) { return rounded ? fixed(v, digits) : exact(v); };
  auto eff = [&](const std::optional<double>& e) { return e ? real(*e, 3) : std::string("n/a"); };
  return {
      {"Kicks to goal", std::to_string(a.kicks), std::to_string(b.kicks)},
      {"Kicks (average per game)", real(a.kicks_mean_per_game, 2), real(b.kicks_mean_per_game, 2)},
      {"Kicks (standard deviation)", real(a.kicks_std, 3), real(b.kicks_std, 3)},
      {"Goals Scored", std::to_string(a.goals), std::to_string(b.goals)},
      {"Goals Scored (average per game)", real(a.goals_mean_per_game, 2), real(b.goals_mean_per_game, 2)},
      {"Goals Scored (standard deviation)", real(a.goals_std, 3), real(b.goals_std, 3)},
      {"Effectiveness", eff(a.effectiveness), eff(b.effectiveness)},
      {"Wins", std::to_string(a.wins), std::to_string(b.wins)},
      {"Losses", std::to_string(a.losses), std::to_string(b.losses)},
      {"Draws", std::to_string(a.draws), std::to_string(b.draws)},
  };
}

json stats_to_json(const MatchStats& s, std::string_view name) {
  json j = {{"name", std::string(name)},
            {"games", s.games},
            {"kicks", s.kicks},
            {"kicks_mean_per_game", s.kicks_mean_per_game},
            {"kicks_std", s.kicks_std},
            {"goals", s.goals},
            {"goals_mean_per_game", s.goals_mean_per_game},
            {"goals_std", s.goals_std},
            {"effectiveness", nullptr},
            {"wins", s.wins},
            {"losses", s.losses},
            {"draws", s.draws}};
  if (s.effectiveness) j["effectiveness"] = *s.effectiveness;
  return j;
}

MatchStats stats_from_json(const json& j) {
  MatchStats s;
  s.games = j.at("games").get<std::size_t>();
  s.kicks = j.at("kicks").get<std::size_t>();
  s.kicks_mean_per_game = j.at("kicks_mean_per_game").get<double>();
  s.kicks_std = j.at("kicks_std").get<double>();
  s.goals = j.at("goals").get<std::size_t>();
  s.goals_mean_per_game = j.at("goals_mean_per_game").get<double>();
  s.goals_std = j.at("goals_std").get<double>();
  if (!j.at("effectiveness").is_null()) s.effectiveness = j.at("effectiveness").get<double>();
  s.wins = j.at("wins").get<std::size_t>();
  s.losses = j.at("losses").get<std::size_t>();
  s.draws = j.at("draws").get<std::size_t>();
  return s;
}

}  // namespace

std::string render_report(const MatchStats& a, const MatchStats& b, std::string_view name_a,
                          std::string_view name_b, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Json: {
      const json j = {{"games", a.games}, {"policies", {stats_to_json(a, name_a), stats_to_json(b, name_b)}}};
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::Csv: {
      out << "metric," << name_a << ',' << name_b << '\n';
      for (const auto& r : rows(a, b, false)) out << r.label << ',' << r.a << ',' << r.b << '\n';
      break;
    }
    case ReportFormat::Text: {
      const auto table = rows(a, b, true);
      std::size_t w0 = 7;
      std::size_t w1 = name_a.size();
      std::size_t w2 = name_b.size();
      for (const auto& r : table) {
        w0 = std::max(w0, r.label.size());
        w1 = std::max(w1, r.a.size());
        w2 = std::max(w2, r.b.size());
      }
      auto line = [&](std::string_view c0, std::string_view c1, std::string_view c2) {
        out << c0 << std::string(w0 - c0.size() + 2, ' ') << std::string(w1 - c1.size(), ' ') << c1 << "  "
            << std::string(w2 - c2.size(), ' ') << c2 << '\n';
      };
      line("Metrics", name_a, name_b);
      out << std::string(w0 + w1 + w2 + 4, '-') << '\n';
      for (const auto& r : table) line(r.label, r.a, r.b);
      break;
    }
  }
  return out.str();
}

std::pair<MatchStats, MatchStats> parse_json_report(std::string_view text) {
  const json j = json::parse(text);
  const auto& p = j.at("policies");
  if (!p.is_array() || p.size() != 2) throw std::invalid_argument("report must list exactly two policies");
  return {stats_from_json(p[0]), stats_from_json(p[1])};
}

}  // namespace shotsel

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shotsel/pipeline.hpp"
#include "shotsel/run_config.hpp"

namespace {

using namespace shotsel;
using nlohmann::json;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--set", o.overrides, "Override a configuration value, section.key=value (repeatable)");
  cmd->add_option("--seed", o.seed, "Master seed (default: run.seed from the configuration, 0)");
}

RunConfig resolve_config(const CommonOptions& o) {
  RunConfig config = o.config_path.empty() ? RunConfig{} : load_run_config(o.config_path);
  for (const auto& assignment : o.overrides) apply_override(config, assignment);
  if (o.seed) config.seed = *o.seed;
  config.validate();
  return config;
}

std::string show(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

// Writes to `path`, or to stdout when empty.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

void ensure_writable(const std::string& path) {
  if (path.empty()) return;
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw std::runtime_error("cannot open '" + path + "' for writing");
}

const std::vector<KickScene>& select_split(const DatasetSplit& split, const std::vector<KickScene>& all,
                                           const std::string& which) {
  if (which == "all") return all;
  if (which == "train") return split.train;
  if (which == "validation") return split.validation;
  return split.test;
}

json train_report_json(const TrainingRun& run, const RunConfig& config, const std::vector<ScoredSample>& test) {
  const auto roc = roc_curve(test);
  const auto ks = ks2_curve(test);
  return json{
      {"seed", config.seed},
      {"n_train", run.split.train.size()},
      {"n_validation", run.split.validation.size()},
      {"n_test", run.split.test.size()},
      {"n_train_balanced", 2 * std::max(count_label(run.split.train, Label::Goal),
                                        count_label(run.split.train, Label::NoGoal))},
      {"epochs_run", run.report.epochs_run},
      {"best_epoch", run.report.best_epoch},
      {"stop_reason", run.report.stop_reason == StopReason::EarlyStop ? "early_stop" : "max_epochs"},
      {"best_validation_mse", run.report.validation_mse_history.at(run.report.best_epoch - 1)},
      {"train_mse_history", run.report.train_mse_history},
      {"validation_mse_history", run.report.validation_mse_history},
      {"test_auc", roc.auc},
      {"test_ks2", ks.ks2},
  };
}

int cmd_gen_data(const CommonOptions& o, std::size_t n, const std::string& out) {
  const RunConfig c = resolve_config(o);
  if (n == 0) throw std::invalid_argument("--n must be >= 1");
  ensure_writable(out);
  const auto scenes = generate_synthetic_scenes(n, c.generator, c.dynamics, c.field, c.aim, c.seed);
  save_scenes(scenes, out);
  std::cerr << "wrote " << scenes.size() << " scenes (" << count_label(scenes, Label::Goal) << " GOAL) to " << out
            << '\n';
  return 0;
}

int cmd_stats(const CommonOptions& o, const std::string& data, const std::string& out) {
  const RunConfig c = resolve_config(o);
  const auto scenes = load_scenes(data, c.field);
  const auto report = univariate_stats(scenes, c.field);
  const auto relevance = feature_relevance(scenes, c.field);
  std::ostringstream csv;
  csv << "feature,mean,std,median,p1,p99,missing_fraction,auc,folded_auc\n";
  for (std::size_t i = 0; i < report.size(); ++i) {
    const auto& s = report[i];
    csv << s.name << ',' << show(s.mean) << ',' << show(s.stddev) << ',' << show(s.median) << ','
        << show(s.percentile_1) << ',' << show(s.percentile_99) << ',' << show(s.missing_fraction) << ','
        << show(relevance[i].auc) << ',' << show(relevance[i].folded_auc) << '\n';
  }
  emit(out, csv.str());
  return 0;
}

int cmd_train(const CommonOptions& o, const std::string& data, const std::string& model_out,
              const std::string& report_out) {
  const RunConfig c = resolve_config(o);
  ensure_writable(model_out);
  ensure_writable(report_out);
  const auto scenes = load_scenes(data, c.field);
  const TrainingRun run = train_on_scenes(scenes, c);
  save_model(run.model, model_out);
  const auto test = score_scenes(run.model, run.split.test, c.field);
  emit(report_out, train_report_json(run, c, test).dump(2) + "\n");
  return 0;
}

int cmd_eval(const CommonOptions& o, const std::string& model_path, const std::string& data,
             const std::string& split_name, const std::string& roc_out, const std::string& ks2_out,
             const std::string& summary_out) {
  const RunConfig c = resolve_config(o);
  ensure_writable(roc_out);
  ensure_writable(ks2_out);
  ensure_writable(summary_out);
  const MlpParams model = load_model(model_path);
  const auto scenes = load_scenes(data, c.field);
  const DatasetSplit split = split_name == "all" ? DatasetSplit{} : split_dataset(scenes, c.seed);
  const auto& chosen = select_split(split, scenes, split_name);
  const auto samples = score_scenes(model, chosen, c.field);
  const auto roc = roc_curve(samples);
  const auto ks = ks2_curve(samples);

  if (!roc_out.empty()) {
    std::ostringstream csv;
    csv << "false_positive_rate,true_positive_rate\n";
    for (const auto& p : roc.points) csv << show(p.false_positive_rate) << ',' << show(p.true_positive_rate) << '\n';
    write_file(roc_out, csv.str());
  }
  if (!ks2_out.empty()) {
    std::ostringstream csv;
    csv << "threshold,cdf_goal,cdf_no_goal,gap\n";
    for (std::size_t i = 0; i < ks.thresholds.size(); ++i) {
      csv << show(ks.thresholds[i]) << ',' << show(ks.cdf_positive[i]) << ',' << show(ks.cdf_negative[i]) << ','
          << show(std::fabs(ks.cdf_positive[i] - ks.cdf_negative[i])) << '\n';
    }
    write_file(ks2_out, csv.str());
  }
  const json summary{
      {"split", split_name},
      {"n", samples.size()},
      {"goals", count_label(chosen, Label::Goal)},
      {"no_goals", count_label(chosen, Label::NoGoal)},
      {"auc", roc.auc},
      {"ks2", ks.ks2},
      {"ks2_threshold", ks.ks2_threshold},
  };
  emit(summary_out, summary.dump(2) + "\n");
  return 0;
}

struct CompareOptions {
  std::string model_path;
  std::string data_path;
  std::string policy_a = "mlp";
  std::string policy_b = "lda";
  std::string format = "text";
  std::string out;
  std::string event_log;
  std::optional<std::size_t> games;
  std::optional<std::size_t> shots;
};

std::unique_ptr<ShotPolicy> build_policy(const std::string& kind, const CompareOptions& co, const RunConfig& c) {
  if (kind == "mlp") {
    if (co.model_path.empty()) throw std::invalid_argument("policy 'mlp' needs --model");
    return make_mlp_policy(load_model(co.model_path), c.field, c.aim, c.policy);
  }
  if (kind == "lda") {
    if (co.data_path.empty()) throw std::invalid_argument("policy 'lda' needs --data to fit the discriminant");
    const auto split = split_dataset(load_scenes(co.data_path, c.field), c.seed);
    return make_lda_policy(lda_train(split.train, c.field), c.field, c.aim, c.policy);
  }
  return make_naive_center_policy(c.field, c.aim);
}

int cmd_compare(const CommonOptions& o, const CompareOptions& co) {
  RunConfig c = resolve_config(o);
  if (co.games) c.games = *co.games;
  if (co.shots) c.shots_per_game = *co.shots;
  c.validate();
  const ReportFormat format = parse_report_format(co.format);
  ensure_writable(co.out);
  const auto a = build_policy(co.policy_a, co, c);
  const auto b = build_policy(co.policy_b, co, c);

  std::optional<std::ofstream> log;
  if (!co.event_log.empty()) {
    log.emplace(co.event_log);
    if (!*log) throw std::runtime_error("cannot open '" + co.event_log + "' for writing");
  }
  const auto result = run_experiment(*a, *b, c.experiment(), c.dynamics, c.field, c.aim, log ? &*log : nullptr);
  const std::string name_a = co.policy_a == co.policy_b ? a->name() + "_a" : a->name();
  const std::string name_b = co.policy_a == co.policy_b ? b->name() + "_b" : b->name();
  emit(co.out, render_report(result.a, result.b, name_a, name_b, format));
  return 0;
}

int cmd_aim_table(const CommonOptions& o, double step, double max_distance, double max_lateral,
                  const std::string& out) {
  const RunConfig c = resolve_config(o);
  if (!(step > 0.0) || !(max_distance > 0.0) || !(max_lateral >= 0.0)) {
    throw std::invalid_argument("--step and --max-distance must be > 0, --max-lateral >= 0");
  }
  const auto targets = discretize_targets(c.field, c.aim);
  const auto nx = static_cast<long>(std::floor(max_distance / step));
  const auto ny = static_cast<long>(std::floor(max_lateral / step));
  std::ostringstream csv;
  csv << "ball_x,ball_y,target_y,p_left,p_right,p_goal\n";
  for (long i = 1; i <= nx; ++i) {
    const double x = c.field.goal_line_x - static_cast<double>(i) * step;
    for (long j = -ny; j <= ny; ++j) {
      const Vec2 ball{x, static_cast<double>(j) * step};
      if (!c.field.inside_field(ball) || !within_horizon(ball, c.field, c.aim)) continue;
      for (const Vec2 t : targets) {
        const AimResult r = p_goal({ball, t}, c.field, c.aim);
        csv << show(ball.x) << ',' << show(ball.y) << ',' << show(t.y) << ',' << show(r.p_left) << ','
            << show(r.p_right) << ',' << show(r.p_goal) << '\n';
      }
    }
  }
  emit(out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shot decision engine: synthetic data, training, evaluation and policy experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "shotsel 1.0");

  CommonOptions common;

  auto* gen = app.add_subcommand("gen-data", "Generate labeled synthetic kick scenes as CSV");
  add_common(gen, common);
  std::size_t gen_n = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of scenes")->required();
  gen->add_option("--out", gen_out, "Output scene CSV")->required();

  auto* stats = app.add_subcommand("stats", "Univariate statistics and single-feature AUCs");
  add_common(stats, common);
  std::string stats_data;
  std::string stats_out;
  stats->add_option("--data", stats_data, "Scene CSV")->required();
  stats->add_option("--out", stats_out, "Output CSV (default: stdout)");

  auto* train_cmd = app.add_subcommand("train", "Train the 22-input network with early stopping");
  add_common(train_cmd, common);
  std::string train_data;
  std::string train_model;
  std::string train_report;
  train_cmd->add_option("--data", train_data, "Scene CSV")->required();
  train_cmd->add_option("--model-out", train_model, "Output model file")->required();
  train_cmd->add_option("--report-out", train_report, "Training report JSON (default: stdout)");

  auto* eval = app.add_subcommand("eval", "ROC / KS2 evaluation of a trained model");
  add_common(eval, common);
  std::string eval_model;
  std::string eval_data;
  std::string eval_split = "test";
  std::string eval_roc;
  std::string eval_ks2;
  std::string eval_out;
  eval->add_option("--model", eval_model, "Model file")->required();
  eval->add_option("--data", eval_data, "Scene CSV")->required();
  eval->add_option("--split", eval_split, "Scenes to evaluate; test uses the seeded 50/25/25 split")
      ->check(CLI::IsMember({"test", "validation", "train", "all"}))
      ->capture_default_str();
  eval->add_option("--roc-out", eval_roc, "ROC curve CSV");
  eval->add_option("--ks2-out", eval_ks2, "KS2 curve CSV");
  eval->add_option("--out", eval_out, "Summary JSON (default: stdout)");

  auto* compare = app.add_subcommand("compare", "Paired policy experiment over simulated games");
  add_common(compare, common);
  CompareOptions co;
  compare->add_option("--model", co.model_path, "Model file for the mlp policy");
  compare->add_option("--data", co.data_path, "Scene CSV whose training split fits the lda policy");
  compare->add_option("--policy-a", co.policy_a, "First policy")
      ->check(CLI::IsMember({"mlp", "lda", "center"}))
      ->capture_default_str();
  compare->add_option("--policy-b", co.policy_b, "Second policy")
      ->check(CLI::IsMember({"mlp", "lda", "center"}))
      ->capture_default_str();
  compare->add_option("--games", co.games, "Games (overrides experiment.games)");
  compare->add_option("--shots", co.shots, "Shots per game (overrides experiment.shots_per_game)");
  compare->add_option("--format", co.format, "Report format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  compare->add_option("--out", co.out, "Report file (default: stdout)");
  compare->add_option("--event-log", co.event_log, "Per-episode JSON lines log");

  auto* aim = app.add_subcommand("aim-table", "On-goal probability over a grid of ball positions");
  add_common(aim, common);
  double aim_step = 1.0;
  double aim_distance = 40.0;
  double aim_lateral = 20.0;
  std::string aim_out;
  aim->add_option("--step", aim_step, "Grid spacing, meters")->capture_default_str();
  aim->add_option("--max-distance", aim_distance, "Farthest ball distance from the goal line")->capture_default_str();
  aim->add_option("--max-lateral", aim_lateral, "Largest |ball_y|")->capture_default_str();
  aim->add_option("--out", aim_out, "Output CSV (default: stdout)");

  auto* config_cmd = app.add_subcommand("default-config", "Print the default configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "shotsel: error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
  }

  try {
    if (*gen) return cmd_gen_data(common, gen_n, gen_out);
    if (*stats) return cmd_stats(common, stats_data, stats_out);
    if (*train_cmd) return cmd_train(common, train_data, train_model, train_report);
    if (*eval) return cmd_eval(common, eval_model, eval_data, eval_split, eval_roc, eval_ks2, eval_out);
    if (*compare) return cmd_compare(common, co);
    if (*aim) return cmd_aim_table(common, aim_step, aim_distance, aim_lateral, aim_out);
    if (*config_cmd) {
      std::cout << default_config_text();
      return 0;
    }
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& ch : msg) {
      if (ch == '\n') ch = ' ';
    }
    std::cerr << "shotsel: error: " << msg << '\n';
    return 1;
  }
  return 1;
}

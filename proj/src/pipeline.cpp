#include "shotsel/pipeline.hpp"

namespace shotsel {

LabeledSet to_labeled_set(const std::vector<KickScene>& scenes, const FieldConfig& field) {
  LabeledSet set;
  set.inputs.reserve(scenes.size());
  set.labels.reserve(scenes.size());
  for (const auto& s : scenes) set.add(extract_features(s, field).values, s.label);
  return set;
}

std::vector<ScoredSample> score_scenes(const MlpParams& model, const std::vector<KickScene>& scenes,
                                       const FieldConfig& field) {
  std::vector<ScoredSample> out;
  out.reserve(scenes.size());
  for (const auto& s : scenes) out.push_back({score(forward(model, extract_features(s, field))), s.label});
  return out;
}

TrainingRun train_on_scenes(const std::vector<KickScene>& scenes, const RunConfig& config) {
  TrainingRun run;
  run.split = split_dataset(scenes, config.seed);
  const auto balanced = balance_by_replication(run.split.train, config.seed);
  TrainConfig train_config = config.train;
  train_config.seed = config.seed;
  auto [model, report] = train(to_labeled_set(balanced, config.field),
                               to_labeled_set(run.split.validation, config.field), train_config);
  run.model = std::move(model);
  run.report = std::move(report);
  return run;
}

}  // namespace shotsel

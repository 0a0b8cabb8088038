#pragma once

#include <vector>

#include "shotsel/metrics.hpp"
#include "shotsel/mlp.hpp"
#include "shotsel/run_config.hpp"

namespace shotsel {

/// Feature vectors and labels of a scene list.
LabeledSet to_labeled_set(const std::vector<KickScene>& scenes, const FieldConfig& field);

/// Network scores (two-node output mapped onto [0, 1]) of each scene's own target.
std::vector<ScoredSample> score_scenes(const MlpParams& model, const std::vector<KickScene>& scenes,
                                       const FieldConfig& field);

struct TrainingRun {
  DatasetSplit split;
  MlpParams model;
  TrainReport report;
};

/// Split 50/25/25, balance the training part by replication, train the
/// network with early stopping on the validation part.
TrainingRun train_on_scenes(const std::vector<KickScene>& scenes, const RunConfig& config);

}  // namespace shotsel

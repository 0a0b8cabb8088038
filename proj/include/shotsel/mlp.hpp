#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "shotsel/features.hpp"
#include "shotsel/random.hpp"

namespace shotsel {

/// Fully connected layer; weights are stored row-major as fan_in x fan_out,
/// so weights[i * fan_out + j] connects input i to unit j.
struct DenseLayer {
  std::size_t fan_in = 0;
  std::size_t fan_out = 0;
  std::vector<double> weights;
  std::vector<double> biases;

  double& weight(std::size_t i, std::size_t j) { return weights[i * fan_out + j]; }
  double weight(std::size_t i, std::size_t j) const { return weights[i * fan_out + j]; }
  bool operator==(const DenseLayer&) const = default;
};

/// Per-input z-score constants, estimated on the training set.
struct Normalization {
  std::vector<double> mean;
  std::vector<double> stddev;
  bool operator==(const Normalization&) const = default;
};

/// Parameters of a tanh multilayer perceptron. The default shape is 22-5-2.
struct MlpParams {
  std::vector<std::size_t> layer_sizes;
  std::vector<DenseLayer> layers;
  Normalization normalization;

  /// All-zero weights and biases with identity normalization.
  static MlpParams zeros(std::vector<std::size_t> layer_sizes);
  /// Weights and biases drawn from U[-half_range, half_range].
  static MlpParams random_uniform(std::vector<std::size_t> layer_sizes, double half_range, Rng& rng);

  std::size_t input_size() const { return layer_sizes.front(); }
  std::size_t output_size() const { return layer_sizes.back(); }

  /// Throws std::invalid_argument on inconsistent shapes or non-positive stds.
  void validate() const;
  bool operator==(const MlpParams&) const = default;
};

/// Gradient with the same shape as MlpParams::layers.
using MlpGradient = std::vector<DenseLayer>;

/// Network outputs for the default two-node output layer.
struct NodePair {
  double node1 = 0.0;
  double node2 = 0.0;
};

/// Standardizes the input and runs every layer through tanh.
std::vector<double> forward(const MlpParams& params, std::span<const double> input);

/// Two-output evaluation of a scene feature vector.
NodePair forward(const MlpParams& params, const FeatureVector& features);

/// Maps two tanh outputs onto [0, 1]: (node1 - node2) / 4 + 0.5.
/// DomainError when either node is outside [-1, 1].
double score(double node1, double node2);
inline double score(NodePair nodes) { return score(nodes.node1, nodes.node2); }

/// Per-example loss: mean over outputs of squared error.
double example_mse(const MlpParams& params, std::span<const double> input, std::span<const double> target);

/// Exact gradient of example_mse with respect to every weight and bias
/// (normalization constants are treated as fixed).
MlpGradient gradient(const MlpParams& params, std::span<const double> input, std::span<const double> target);

/// params.layers -= learning_rate * grad.
void apply_gradient(MlpParams& params, const MlpGradient& grad, double learning_rate);

/// Two-node target for a label: GOAL -> (+1, -1), NO_GOAL -> (-1, +1).
std::array<double, 2> encode_label(Label label);

/// Training inputs paired with labels.
struct LabeledSet {
  std::vector<std::vector<double>> inputs;
  std::vector<Label> labels;

  std::size_t size() const { return inputs.size(); }
  void add(std::span<const double> x, Label y) {
    inputs.emplace_back(x.begin(), x.end());
    labels.push_back(y);
  }
};

enum class FailureRule {
  BestSoFar,  // validation error not below the best seen so far
  Previous,   // validation error not below the previous epoch's
};

struct TrainConfig {
  double learning_rate = 0.001;
  std::size_t max_epochs = 10000;
  std::size_t patience = 5;
  double init_half_range = 0.1;
  std::uint64_t seed = 0;
  FailureRule failure_rule = FailureRule::BestSoFar;
  std::vector<std::size_t> hidden_sizes = {5};

  static constexpr std::size_t kNoPatienceLimit = std::numeric_limits<std::size_t>::max();

  void validate() const;
};

enum class StopReason { MaxEpochs, EarlyStop };

struct TrainReport {
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  std::vector<double> train_mse_history;
  std::vector<double> validation_mse_history;
  StopReason stop_reason = StopReason::MaxEpochs;

  bool operator==(const TrainReport&) const = default;
};

/// Tracks validation errors epoch by epoch and decides when to stop.
class EarlyStopping {
 public:
  EarlyStopping(std::size_t patience, FailureRule rule);

  /// Records the error of the next epoch; returns true if it is a new best.
  bool observe(double validation_error);
  bool should_stop() const { return consecutive_failures_ >= patience_; }
  std::size_t best_epoch() const { return best_epoch_; }
  double best_error() const { return best_; }
  std::size_t epochs_seen() const { return epoch_; }

 private:
  std::size_t patience_;
  FailureRule rule_;
  std::size_t epoch_ = 0;
  std::size_t best_epoch_ = 0;
  std::size_t consecutive_failures_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
  double previous_ = std::numeric_limits<double>::infinity();
};

/// Computes the validation error of the current parameters after an epoch.
using ValidationFn = std::function<double(const MlpParams&, std::size_t epoch)>;

/// Online backpropagation: each epoch visits the training set in a seeded
/// shuffled order and updates after every example. Returns the parameters of
/// the best validation epoch.
std::pair<MlpParams, TrainReport> train(const LabeledSet& train_set, const LabeledSet& validation_set,
                                        const TrainConfig& config);

/// Same loop with a caller-supplied validation error.
std::pair<MlpParams, TrainReport> train(const LabeledSet& train_set, const ValidationFn& validation,
                                        const TrainConfig& config);

/// Mean per-example MSE over a labeled set.
double dataset_mse(const MlpParams& params, const LabeledSet& set);

/// z-score constants of a set of inputs; zero variance maps to stddev 1.
Normalization fit_normalization(const std::vector<std::vector<double>>& inputs);

/// Versioned text model file ("shotsel-mlp 1").
void write_model(std::ostream& out, const MlpParams& params);
MlpParams read_model(std::istream& in);
void save_model(const MlpParams& params, const std::filesystem::path& path);
MlpParams load_model(const std::filesystem::path& path);

}  // namespace shotsel

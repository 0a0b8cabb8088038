#include "shotsel/mlp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "shotsel/scene.hpp"

namespace shotsel {

namespace {

constexpr std::string_view kModelMagic = "shotsel-mlp";
constexpr int kModelVersion = 1;

std::vector<DenseLayer> shaped_layers(const std::vector<std::size_t>& sizes) {
  if (sizes.size() < 2) throw std::invalid_argument("an MLP needs at least an input and an output layer");
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    if (sizes[l] == 0 || sizes[l + 1] == 0) throw std::invalid_argument("layer sizes must be positive");
    DenseLayer layer;
    layer.fan_in = sizes[l];
    layer.fan_out = sizes[l + 1];
    layer.weights.assign(layer.fan_in * layer.fan_out, 0.0);
    layer.biases.assign(layer.fan_out, 0.0);
    layers.push_back(std::move(layer));
  }
  return layers;
}

// Activations of every layer, index 0 being the standardized input.
std::vector<std::vector<double>> activations(const MlpParams& params, std::span<const double> input) {
  if (input.size() != params.input_size()) {
    throw std::invalid_argument("input has " + std::to_string(input.size()) + " values, network expects " +
                                std::to_string(params.input_size()));
  }
  std::vector<std::vector<double>> acts;
  acts.reserve(params.layers.size() + 1);
  std::vector<double> x(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    x[i] = (input[i] - params.normalization.mean[i]) / params.normalization.stddev[i];
  }
  acts.push_back(std::move(x));
  for (const auto& layer : params.layers) {
    const auto& in = acts.back();
    std::vector<double> out(layer.biases);
    for (std::size_t i = 0; i < layer.fan_in; ++i) {
      const double a = in[i];
      const double* w = &layer.weights[i * layer.fan_out];
      for (std::size_t j = 0; j < layer.fan_out; ++j) out[j] += a * w[j];
    }
    for (double& v : out) v = std::tanh(v);
    acts.push_back(std::move(out));
  }
  return acts;
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

class ModelReader {
 public:
  explicit ModelReader(std::istream& in) : in_(in) {}

  std::vector<std::string> next(std::string_view what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string t; ss >> t;) tokens.push_back(t);
      return tokens;
    }
    throw ParseError(line_no_ + 1, 1, "truncated model file, expected " + std::string(what));
  }

  std::vector<std::string> expect(std::string_view keyword, std::size_t n_args) {
    auto tokens = next(keyword);
    if (tokens.front() != keyword) {
      throw ParseError(line_no_, 1, "expected '" + std::string(keyword) + "', got '" + tokens.front() + "'");
    }
    if (tokens.size() != n_args + 1) {
      throw ParseError(line_no_, 1, "'" + std::string(keyword) + "' expects " + std::to_string(n_args) + " values");
    }
    return tokens;
  }

  std::vector<double> numbers(std::size_t n, std::string_view what) {
    auto tokens = next(what);
    if (tokens.size() != n) {
      throw ParseError(line_no_, 1, std::string(what) + ": expected " + std::to_string(n) + " numbers, got " +
                                        std::to_string(tokens.size()));
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(number(tokens[i], i + 1));
    return out;
  }

  double number(const std::string& t, std::size_t column) const {
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
      throw ParseError(line_no_, column, "expected a finite number, got '" + t + "'");
    }
    return v;
  }

  std::size_t count(const std::string& t, std::size_t column) const {
    std::size_t v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      throw ParseError(line_no_, column, "expected a count, got '" + t + "'");
    }
    return v;
  }

  std::size_t line() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace

MlpParams MlpParams::zeros(std::vector<std::size_t> layer_sizes) {
  MlpParams p;
  p.layers = shaped_layers(layer_sizes);
  p.normalization.mean.assign(layer_sizes.front(), 0.0);
  p.normalization.stddev.assign(layer_sizes.front(), 1.0);
  p.layer_sizes = std::move(layer_sizes);
  return p;
}

MlpParams MlpParams::random_uniform(std::vector<std::size_t> layer_sizes, double half_range, Rng& rng) {
  MlpParams p = zeros(std::move(layer_sizes));
  std::uniform_real_distribution<double> u(-half_range, half_range);
  for (auto& layer : p.layers) {
    for (double& w : layer.weights) w = u(rng);
    for (double& b : layer.biases) b = u(rng);
  }
  return p;
}

void MlpParams::validate() const {
  if (layer_sizes.size() < 2 || layers.size() + 1 != layer_sizes.size()) {
    throw std::invalid_argument("MLP layer count does not match layer_sizes");
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    if (layer.fan_in != layer_sizes[l] || layer.fan_out != layer_sizes[l + 1] ||
        layer.weights.size() != layer.fan_in * layer.fan_out || layer.biases.size() != layer.fan_out) {
      throw std::invalid_argument("MLP layer " + std::to_string(l + 1) + " has inconsistent dimensions");
    }
  }
  if (normalization.mean.size() != input_size() || normalization.stddev.size() != input_size()) {
    throw std::invalid_argument("MLP normalization does not match the input size");
  }
  for (double s : normalization.stddev) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("normalization stddev must be positive");
  }
}

std::vector<double> forward(const MlpParams& params, std::span<const double> input) {
  return std::move(activations(params, input).back());
}

NodePair forward(const MlpParams& params, const FeatureVector& features) {
  if (params.output_size() != 2) throw std::invalid_argument("network must have two output nodes");
  const auto out = forward(params, std::span<const double>(features.values));
  return {out[0], out[1]};
}

double score(double node1, double node2) {
  if (!(node1 >= -1.0 && node1 <= 1.0 && node2 >= -1.0 && node2 <= 1.0)) {
    throw DomainError("score: node outputs must lie in [-1, 1]");
  }
  return (node1 - node2) / 4.0 + 0.5;
}

double example_mse(const MlpParams& params, std::span<const double> input, std::span<const double> target) {
  const auto out = forward(params, input);
  if (target.size() != out.size()) throw std::invalid_argument("target size does not match the output layer");
  double sum = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) sum += (out[j] - target[j]) * (out[j] - target[j]);
  return sum / static_cast<double>(out.size());
}

MlpGradient gradient(const MlpParams& params, std::span<const double> input, std::span<const double> target) {
  const auto acts = activations(params, input);
  const auto& out = acts.back();
  if (target.size() != out.size()) throw std::invalid_argument("target size does not match the output layer");

  MlpGradient grad = shaped_layers(params.layer_sizes);
  std::vector<double> delta(out.size());
  const double n_out = static_cast<double>(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    delta[j] = 2.0 * (out[j] - target[j]) / n_out * (1.0 - out[j] * out[j]);
  }
  for (std::size_t l = params.layers.size(); l-- > 0;) {
    const auto& layer = params.layers[l];
    const auto& in = acts[l];
    auto& g = grad[l];
    for (std::size_t i = 0; i < layer.fan_in; ++i) {
      for (std::size_t j = 0; j < layer.fan_out; ++j) g.weight(i, j) = in[i] * delta[j];
    }
    g.biases = delta;
    if (l == 0) break;
    std::vector<double> prev(layer.fan_in, 0.0);
    for (std::size_t i = 0; i < layer.fan_in; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < layer.fan_out; ++j) s += layer.weight(i, j) * delta[j];
      prev[i] = s * (1.0 - in[i] * in[i]);
    }
    delta = std::move(prev);
  }
  return grad;
}

void apply_gradient(MlpParams& params, const MlpGradient& grad, double learning_rate) {
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    auto& layer = params.layers[l];
    for (std::size_t k = 0; k < layer.weights.size(); ++k) layer.weights[k] -= learning_rate * grad[l].weights[k];
    for (std::size_t k = 0; k < layer.biases.size(); ++k) layer.biases[k] -= learning_rate * grad[l].biases[k];
  }
}

std::array<double, 2> encode_label(Label label) {
  return label == Label::Goal ? std::array<double, 2>{1.0, -1.0} : std::array<double, 2>{-1.0, 1.0};
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (patience < 1) throw std::invalid_argument("patience must be >= 1");
  if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
  if (!(init_half_range >= 0.0)) throw std::invalid_argument("init_half_range must be >= 0");
  for (std::size_t h : hidden_sizes) {
    if (h == 0) throw std::invalid_argument("hidden layer sizes must be positive");
  }
}

EarlyStopping::EarlyStopping(std::size_t patience, FailureRule rule) : patience_(patience), rule_(rule) {
  if (patience_ < 1) throw std::invalid_argument("patience must be >= 1");
}

bool EarlyStopping::observe(double validation_error) {
  ++epoch_;
  const bool improved = validation_error < best_;
  const bool failed = rule_ == FailureRule::BestSoFar ? !improved : !(validation_error < previous_);
  consecutive_failures_ = failed ? consecutive_failures_ + 1 : 0;
  previous_ = validation_error;
  if (improved) {
    best_ = validation_error;
    best_epoch_ = epoch_;
  }
  return improved;
}

double dataset_mse(const MlpParams& params, const LabeledSet& set) {
  if (set.size() == 0) throw std::invalid_argument("dataset_mse of an empty set");
  double sum = 0.0;
  for (std::size_t k = 0; k < set.size(); ++k) {
    sum += example_mse(params, set.inputs[k], encode_label(set.labels[k]));
  }
  return sum / static_cast<double>(set.size());
}

Normalization fit_normalization(const std::vector<std::vector<double>>& inputs) {
  if (inputs.empty()) throw std::invalid_argument("fit_normalization of an empty set");
  const std::size_t d = inputs.front().size();
  Normalization n;
  n.mean.assign(d, 0.0);
  n.stddev.assign(d, 0.0);
  for (const auto& x : inputs) {
    if (x.size() != d) throw std::invalid_argument("inputs have inconsistent sizes");
    for (std::size_t i = 0; i < d; ++i) n.mean[i] += x[i];
  }
  for (double& m : n.mean) m /= static_cast<double>(inputs.size());
  for (const auto& x : inputs) {
    for (std::size_t i = 0; i < d; ++i) n.stddev[i] += (x[i] - n.mean[i]) * (x[i] - n.mean[i]);
  }
  for (double& s : n.stddev) {
    s = std::sqrt(s / static_cast<double>(inputs.size()));
    if (!(s > 1e-12)) s = 1.0;
  }
  return n;
}

std::pair<MlpParams, TrainReport> train(const LabeledSet& train_set, const LabeledSet& validation_set,
                                        const TrainConfig& config) {
  if (validation_set.size() == 0) throw std::invalid_argument("validation set is empty");
  // The validation closure sees the same normalization as training because it
  // is carried inside the params being evaluated.
  return train(
      train_set, [&](const MlpParams& p, std::size_t) { return dataset_mse(p, validation_set); }, config);
}

std::pair<MlpParams, TrainReport> train(const LabeledSet& train_set, const ValidationFn& validation,
                                        const TrainConfig& config) {
  config.validate();
  if (train_set.size() == 0) throw std::invalid_argument("training set is empty");
  if (train_set.labels.size() != train_set.size()) throw std::invalid_argument("labels do not match inputs");

  std::vector<std::size_t> sizes = {train_set.inputs.front().size()};
  sizes.insert(sizes.end(), config.hidden_sizes.begin(), config.hidden_sizes.end());
  sizes.push_back(2);

  Rng rng(config.seed);
  MlpParams params = MlpParams::random_uniform(sizes, config.init_half_range, rng);
  params.normalization = fit_normalization(train_set.inputs);

  std::vector<std::array<double, 2>> targets;
  targets.reserve(train_set.size());
  for (Label l : train_set.labels) targets.push_back(encode_label(l));

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  EarlyStopping stopper(config.patience, config.failure_rule);
  MlpParams best = params;
  TrainReport report;
  report.stop_reason = StopReason::MaxEpochs;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double train_sum = 0.0;
    for (std::size_t k : order) {
      const auto& x = train_set.inputs[k];
      train_sum += example_mse(params, x, targets[k]);
      apply_gradient(params, gradient(params, x, targets[k]), config.learning_rate);
    }
    report.train_mse_history.push_back(train_sum / static_cast<double>(train_set.size()));
    const double val = validation(params, epoch);
    report.validation_mse_history.push_back(val);
    report.epochs_run = epoch;
    if (stopper.observe(val)) best = params;
    if (stopper.should_stop()) {
      report.stop_reason = StopReason::EarlyStop;
      break;
    }
  }
  report.best_epoch = stopper.best_epoch();
  return {std::move(best), std::move(report)};
}

void write_model(std::ostream& out, const MlpParams& params) {
  params.validate();
  out << kModelMagic << ' ' << kModelVersion << '\n';
  out << "layers " << params.layer_sizes.size();
  for (std::size_t s : params.layer_sizes) out << ' ' << s;
  out << '\n';
  out << "normalization " << params.input_size() << '\n';
  for (std::size_t i = 0; i < params.input_size(); ++i) {
    out << fmt(params.normalization.mean[i]) << ' ' << fmt(params.normalization.stddev[i]) << '\n';
  }
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const auto& layer = params.layers[l];
    out << "layer " << (l + 1) << ' ' << layer.fan_in << ' ' << layer.fan_out << '\n';
    for (std::size_t i = 0; i < layer.fan_in; ++i) {
      for (std::size_t j = 0; j < layer.fan_out; ++j) out << (j ? " " : "") << fmt(layer.weight(i, j));
      out << '\n';
    }
    for (std::size_t j = 0; j < layer.fan_out; ++j) out << (j ? " " : "") << fmt(layer.biases[j]);
    out << '\n';
  }
  out << "end\n";
}

MlpParams read_model(std::istream& in) {
  ModelReader r(in);
  auto head = r.next("header");
  if (head.size() != 2 || head[0] != kModelMagic) throw ParseError(r.line(), 1, "not a shotsel model file");
  if (head[1] != std::to_string(kModelVersion)) {
    throw ParseError(r.line(), 2, "unsupported model version '" + head[1] + "'");
  }
  auto layers_line = r.next("layers");
  if (layers_line.size() < 2 || layers_line[0] != "layers") throw ParseError(r.line(), 1, "expected 'layers'");
  const std::size_t n_layers = r.count(layers_line[1], 2);
  if (n_layers < 2 || layers_line.size() != n_layers + 2) {
    throw ParseError(r.line(), 2, "layer count does not match the listed sizes");
  }
  std::vector<std::size_t> sizes;
  for (std::size_t k = 0; k < n_layers; ++k) {
    sizes.push_back(r.count(layers_line[k + 2], k + 3));
    if (sizes.back() == 0) throw ParseError(r.line(), k + 3, "layer size must be positive");
  }
  MlpParams p = MlpParams::zeros(sizes);

  auto norm = r.expect("normalization", 1);
  if (r.count(norm[1], 2) != p.input_size()) throw ParseError(r.line(), 2, "normalization size mismatch");
  for (std::size_t i = 0; i < p.input_size(); ++i) {
    const auto ms = r.numbers(2, "normalization entry");
    p.normalization.mean[i] = ms[0];
    p.normalization.stddev[i] = ms[1];
    if (!(ms[1] > 0.0)) throw ParseError(r.line(), 2, "normalization stddev must be positive");
  }
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    auto hdr = r.expect("layer", 3);
    auto& layer = p.layers[l];
    if (r.count(hdr[1], 2) != l + 1 || r.count(hdr[2], 3) != layer.fan_in || r.count(hdr[3], 4) != layer.fan_out) {
      throw ParseError(r.line(), 1, "layer header does not match the declared sizes");
    }
    for (std::size_t i = 0; i < layer.fan_in; ++i) {
      const auto row = r.numbers(layer.fan_out, "weight row");
      std::copy(row.begin(), row.end(), layer.weights.begin() + static_cast<std::ptrdiff_t>(i * layer.fan_out));
    }
    layer.biases = r.numbers(layer.fan_out, "bias row");
  }
  r.expect("end", 0);
  return p;
}

void save_model(const MlpParams& params, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_model(out, params);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

MlpParams load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_model(in);
}

}  // namespace shotsel

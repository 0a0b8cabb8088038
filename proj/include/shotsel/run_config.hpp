#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "shotsel/experiment.hpp"
#include "shotsel/mlp.hpp"

namespace shotsel {

/// Every tunable of the pipeline. Loaded from an INI-style file:
///
///   # comment
///   [section]
///   key = value
///
/// Sections: run, field, dynamics, aim, policy, train, keeper, defender,
/// generator, experiment. Unknown sections or keys are errors.
struct RunConfig {
  FieldConfig field;
  DynamicsConfig dynamics;
  AimConfig aim;
  PolicyConfig policy;
  TrainConfig train;
  GeneratorConfig generator;
  std::size_t games = 100;
  std::size_t shots_per_game = 10;
  std::optional<InterceptionModel> evaluation_opponents;
  std::uint64_t seed = 0;

  /// Sets one value by its dotted name, e.g. "aim.sigma_coefficient".
  void set(std::string_view dotted_key, std::string_view value);

  void validate() const;

  ExperimentConfig experiment() const;
};

RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

/// Applies "section.key=value" overrides on top of `config`.
void apply_override(RunConfig& config, std::string_view assignment);

/// The default configuration rendered in the file format.
std::string default_config_text();

}  // namespace shotsel

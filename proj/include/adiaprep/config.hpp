// Experiment configuration: JSON ingestion, built-in presets, CLI overrides
// and resolution of derived defaults.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "adiaprep/analyze.hpp"
#include "adiaprep/evolve.hpp"
#include "adiaprep/measure.hpp"
#include "adiaprep/model.hpp"

namespace adiaprep {

struct FieldError {
  std::string field;
  std::string message;
};

/// One or more invalid configuration fields.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<FieldError> errors);
  ConfigError(std::string field, std::string message);
  const std::vector<FieldError>& errors() const { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

struct OutputOptions {
  std::string directory = "adiaprep-out";
  bool csv = true;
  bool json = true;
  bool svg = true;
  /// Adds wall-clock duration to summary.json (breaks byte-identical reruns).
  bool timing = false;
};

struct ExperimentConfig {
  std::string preset;
  /// "model1", "model2" or "custom".
  std::string model = "model1";
  /// Inline Hamiltonians for model == "custom": {"initial", "target", "observables"}.
  nlohmann::json custom_model;
  double coupling = 1.0;
  double total_time = 36.0;
  double step_width = 0.125;
  Integrator integrator = Integrator::trotter2;
  SplitOrder split_order = SplitOrder::initial_outside;
  /// Defaults to total_time when unset.
  std::optional<double> hold_duration;
  /// Defaults to the value closest to step_width that divides the oscillation
  /// period into an integer number (>= 16) of samples.
  std::optional<double> sample_dt;
  HoldMethod hold_method = HoldMethod::exact;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  /// Empty means every observable the model defines.
  std::vector<std::string> observables;
  MeanEstimator mean_estimator = MeanEstimator::min_max;
  OutputOptions output;
};

std::vector<std::string> preset_names();
/// Throws ConfigError listing the available presets when the name is unknown.
ExperimentConfig preset_config(std::string_view name);

/// Parses "0.125", "1/24", "pi/4", "2*pi" and plain JSON numbers.
double parse_real(const nlohmann::json& value, const std::string& field);

/// Applies every key of `doc` onto `config`. Unknown keys and type errors are
/// collected and thrown together.
void apply_json(ExperimentConfig& config, const nlohmann::json& doc);

/// Applies `key=value`; the value is read as JSON when it parses, otherwise as
/// a string. Dotted keys address nested objects ("output.directory"); aliases
/// J, T and dt map to coupling, total_time and step_width.
void apply_override(ExperimentConfig& config, std::string_view assignment);

/// Throws ConfigError when the file cannot be read or is not a JSON object.
nlohmann::json read_config_file(const std::string& path);

/// Configuration with every derived default filled in and validated.
struct ResolvedConfig {
  ExperimentConfig config;
  ModelSpec spec;
  double hold_duration = 0.0;
  double sample_dt = 0.0;
  std::vector<std::string> observables;
};

/// Validates every field and fills derived defaults. Throws ConfigError.
ResolvedConfig resolve(const ExperimentConfig& config);

/// Builds the model named by the configuration. Throws ConfigError.
ModelSpec build_model(const ExperimentConfig& config);

/// Echo of the resolved configuration (sorted keys). The output block is
/// left out of run summaries so artifacts do not depend on where they land.
nlohmann::json to_json(const ResolvedConfig& resolved, bool include_output = true);

}  // namespace adiaprep

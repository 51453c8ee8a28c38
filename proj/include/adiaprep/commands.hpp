// CLI verbs: run, sweep, validate.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adiaprep/config.hpp"
#include "adiaprep/experiment.hpp"

namespace adiaprep {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

inline constexpr const char* kSeedEnvVar = "ADIAPREP_SEED";

struct ConfigSource {
  std::optional<std::string> config_path;
  /// Overrides any preset named inside the config file.
  std::optional<std::string> preset;
  /// key=value assignments applied after the file.
  std::vector<std::string> overrides;
  std::optional<std::string> output_dir;
  /// Value of ADIAPREP_SEED, if set; wins over every other seed source.
  std::optional<std::string> env_seed;
};

/// Reads ADIAPREP_SEED from the environment.
std::optional<std::string> seed_from_environment();

/// defaults <- preset <- file <- overrides <- output_dir <- env seed.
ExperimentConfig load_config(const ConfigSource& source);

struct SweepRow {
  std::string value;
  RunResult result;
  double trotter_deviation = 0.0;
};

enum class SweepParameter { total_time, step_width, shots };
/// Accepts T, dt or shots.
SweepParameter parse_sweep_parameter(const std::string& name);
std::string to_string(SweepParameter parameter);

/// One row per value in input order; rows run concurrently.
std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepParameter parameter,
                                const std::vector<std::string>& values);

/// Header: index,<param>,beta_sq,prepared_beta_sq,raw_average,corrected_value,
/// reference_value,trotter_deviation,stderr
std::string sweep_csv(SweepParameter parameter, const std::vector<SweepRow>& rows);

int cmd_run(const ConfigSource& source, std::ostream& out, std::ostream& err);
int cmd_validate(const ConfigSource& source, std::ostream& out, std::ostream& err);
int cmd_sweep(const ConfigSource& source, const std::string& parameter,
              const std::vector<std::string>& values, std::ostream& out, std::ostream& err);

}  // namespace adiaprep

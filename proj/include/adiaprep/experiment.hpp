// End-to-end experiment: adiabatic preparation, hold-phase measurement and
// diagnosis for every requested observable.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "adiaprep/analyze.hpp"
#include "adiaprep/config.hpp"
#include "adiaprep/evolve.hpp"
#include "adiaprep/measure.hpp"

namespace adiaprep {

enum class ObservableRole { anti_commuting, general, conserved };
std::string to_string(ObservableRole role);

struct ChannelResult {
  OscillationStats stats;
  std::optional<VacuumDiagnosis> diagnosis;
  /// Set when the diagnosis was attempted and rejected.
  std::string diagnosis_error;
};

struct ObservableResult {
  std::string label;
  ObservableRole role = ObservableRole::general;
  ObservableProfile profile;
  TimeSeries series;
  /// Closed-form overlay, available for the preset models only.
  std::optional<TimeSeries> theory;
  ChannelResult exact;
  std::optional<ChannelResult> sampled;
  /// Standard error of the window average of the sampled channel.
  std::optional<double> average_standard_error;
  /// Mean per-point standard error of the sampled channel.
  std::optional<double> point_standard_error;

  const ChannelResult& primary_channel() const { return sampled ? *sampled : exact; }
};

struct RunResult {
  ResolvedConfig resolved;
  AdiabaticSchedule schedule;
  StateVector prepared;
  ResidualDecomposition decomposition;
  double fidelity = 0.0;
  std::vector<ObservableResult> observables;
  double wall_clock_seconds = 0.0;

  /// First observable that oscillates (non-zero transition element), if any.
  const ObservableResult* primary() const;
};

RunResult run_experiment(const ResolvedConfig& resolved);

/// ||psi_trotter2(T) - psi_ref(T)|| where the reference integrates with
/// exact midpoint exponentials at step effective_step / refinement.
double trotter_deviation(const ModelSpec& spec, const AdiabaticSchedule& schedule,
                         SplitOrder order = SplitOrder::initial_outside, int refinement = 64);

nlohmann::json to_json(const OscillationStats& stats);
nlohmann::json to_json(const VacuumDiagnosis& diagnosis);
/// Deterministic summary (sorted keys). Wall-clock time only when include_timing.
nlohmann::json summarize(const RunResult& result, bool include_timing = false);

}  // namespace adiaprep

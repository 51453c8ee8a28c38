#include "adiaprep/experiment.hpp"

#include <chrono>
#include <cmath>

namespace adiaprep {

using nlohmann::json;

namespace {

constexpr double kTransitionCutoff = 1e-12;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

ChannelResult analyze_channel(const TimeSeries& series, SeriesChannel channel, double omega,
                              ObservableRole role, const ObservableProfile& profile,
                              const ModelSpec& spec, MeanEstimator estimator) {
  ChannelResult out;
  out.stats = oscillation_stats(series, omega, channel);
  if (role == ObservableRole::conserved) return out;
  DiagnosisOptions options;
  options.mean_estimator = estimator;
  options.reference_value = profile.ground_value;
  try {
    if (role == ObservableRole::anti_commuting) {
      const auto& ev = spec.target.eigensystem().eigenvalues;
      out.diagnosis = diagnose_anticommuting(out.stats, options, profile.variance_weight(),
                                             ev[0] / spec.coupling, ev[1] / spec.coupling);
    } else {
      out.diagnosis = diagnose_general(out.stats, profile.variance_weight(), options);
    }
  } catch (const AnalysisError& e) {
    out.diagnosis_error = e.what();
  }
  return out;
}

json channel_json(const ChannelResult& ch) {
  json out = json::object();
  out["stats"] = to_json(ch.stats);
  out["diagnosis"] = ch.diagnosis ? to_json(*ch.diagnosis) : json(nullptr);
  if (!ch.diagnosis_error.empty()) out["diagnosis_error"] = ch.diagnosis_error;
  return out;
}

}  // namespace

std::string to_string(ObservableRole role) {
  switch (role) {
    case ObservableRole::anti_commuting: return "anti-commuting";
    case ObservableRole::general: return "general";
    case ObservableRole::conserved: return "conserved";
  }
  return "general";
}

const ObservableResult* RunResult::primary() const {
  for (const auto& o : observables)
    if (o.role != ObservableRole::conserved) return &o;
  return nullptr;
}

RunResult run_experiment(const ResolvedConfig& resolved) {
  const auto started = std::chrono::steady_clock::now();
  const auto& cfg = resolved.config;
  const ModelSpec& spec = resolved.spec;

  RunResult result{resolved, AdiabaticSchedule(cfg.total_time, cfg.step_width), {}, {}, 0.0, {}, 0.0};
  result.prepared = run_adiabatic(spec, result.schedule, cfg.integrator, cfg.split_order);
  result.decomposition = decompose(result.prepared, spec);
  result.fidelity = std::norm(inner(spec.reference_ground_state.amplitudes(), result.prepared.amplitudes()));

  const double omega = oscillation_frequency(spec);
  const HoldGrid grid{cfg.total_time, resolved.hold_duration, resolved.sample_dt};
  const ShotSampler sampler(cfg.seed);

  for (const auto& label : resolved.observables) {
    const HermitianOperator& o = spec.observable(label);
    ObservableResult r;
    r.label = label;
    r.profile = observable_profile(spec, o);
    if (r.profile.transition_modulus <= kTransitionCutoff) r.role = ObservableRole::conserved;
    else if (r.profile.anticommutes_with_target) r.role = ObservableRole::anti_commuting;
    else r.role = ObservableRole::general;

    r.series = hold_series(result.prepared, spec, o, grid, cfg.shots, sampler, cfg.hold_method);
    try {
      r.theory = predicted_series(result.decomposition, spec, label, grid.start_time, r.series.times);
    } catch (const AnalysisError&) {
      r.theory.reset();
    }
    r.exact = analyze_channel(r.series, SeriesChannel::exact, omega, r.role, r.profile, spec,
                              cfg.mean_estimator);
    if (r.series.has_samples()) {
      r.sampled = analyze_channel(r.series, SeriesChannel::sampled, omega, r.role, r.profile, spec,
                                  cfg.mean_estimator);
      const std::size_t window = r.sampled->stats.window_samples;
      double sum_sq = 0.0, sum = 0.0;
      for (std::size_t k = 0; k < window; ++k) {
        sum_sq += r.series.standard_errors[k] * r.series.standard_errors[k];
        sum += r.series.standard_errors[k];
      }
      r.average_standard_error = std::sqrt(sum_sq) / static_cast<double>(window);
      r.point_standard_error = sum / static_cast<double>(window);
    }
    result.observables.push_back(std::move(r));
  }

  result.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

double trotter_deviation(const ModelSpec& spec, const AdiabaticSchedule& schedule, SplitOrder order,
                         int refinement) {
  const StateVector trotter = run_adiabatic(spec, schedule, Integrator::trotter2, order);
  const AdiabaticSchedule fine(schedule.total_time(), schedule.effective_step() / refinement);
  const StateVector reference = run_adiabatic(spec, fine, Integrator::exact_midpoint);
  return distance(trotter.amplitudes(), reference.amplitudes());
}

json to_json(const OscillationStats& s) {
  return {{"maximum", s.maximum},
          {"minimum", s.minimum},
          {"mean_minmax", s.mean_minmax},
          {"mean_arith", s.mean_arith},
          {"variance", s.variance},
          {"signal_variance", s.signal_variance()},
          {"shot_noise_floor", s.shot_noise_floor},
          {"peak_to_peak", s.peak_to_peak},
          {"amplitude", s.amplitude},
          {"window_periods", s.window_periods},
          {"window_samples", s.window_samples}};
}

json to_json(const VacuumDiagnosis& d) {
  return {{"kind", to_string(d.model_kind)},
          {"beta_sq", d.beta_sq},
          {"beta_sq_shortcut", d.beta_sq_shortcut},
          {"alpha_beta_sq", d.alpha_beta_sq},
          {"raw_average", d.raw_average},
          {"corrected_value", d.corrected_value},
          {"reference_value", optional_number(d.reference_value)},
          {"predicted_conserved", optional_number(d.predicted_conserved)},
          {"mean_estimator", to_string(d.mean_estimator)}};
}

json summarize(const RunResult& result, bool include_timing) {
  const auto& dec = result.decomposition;
  json out = json::object();
  out["config"] = to_json(result.resolved, /*include_output=*/false);
  out["preparation"] = {{"alpha_mod", dec.alpha_mod},
                        {"beta_mod", dec.beta_mod},
                        {"beta_sq", dec.beta_sq},
                        {"theta", dec.theta},
                        {"theta_defined", dec.theta_defined},
                        {"fidelity", result.fidelity},
                        {"norm_error", std::abs(result.prepared.norm() - 1.0)},
                        {"steps", result.schedule.num_steps()},
                        {"effective_step", result.schedule.effective_step()},
                        {"discretization_mismatch", result.schedule.discretization_mismatch()}};

  json observables = json::object();
  json standard_errors = json::object();
  for (const auto& o : result.observables) {
    json entry = json::object();
    entry["role"] = to_string(o.role);
    entry["ground_value"] = o.profile.ground_value;
    entry["excited_value"] = o.profile.excited_value;
    entry["transition_modulus"] = o.profile.transition_modulus;
    entry["exact"] = channel_json(o.exact);
    entry["sampled"] = o.sampled ? channel_json(*o.sampled) : json(nullptr);
    entry["average_standard_error"] = optional_number(o.average_standard_error);
    entry["point_standard_error"] = optional_number(o.point_standard_error);
    entry["samples"] = o.series.size();
    observables[o.label] = std::move(entry);
    standard_errors[o.label] = optional_number(o.average_standard_error);
  }
  out["observables"] = std::move(observables);
  out["standard_errors"] = std::move(standard_errors);

  const ObservableResult* primary = result.primary();
  const ChannelResult* channel = primary ? &primary->primary_channel() : nullptr;
  const VacuumDiagnosis* diag = channel && channel->diagnosis ? &*channel->diagnosis : nullptr;
  out["primary_observable"] = primary ? json(primary->label) : json(nullptr);
  out["channel"] = primary && primary->sampled ? "sampled" : "exact";
  out["beta_sq"] = diag ? json(diag->beta_sq) : json(nullptr);
  out["raw_average"] = diag ? json(diag->raw_average) : json(nullptr);
  out["corrected_value"] = diag ? json(diag->corrected_value) : json(nullptr);
  out["reference_value"] = primary ? json(primary->profile.ground_value) : json(nullptr);
  out["oscillation"] = channel ? to_json(channel->stats) : json(nullptr);
  if (include_timing) out["wall_clock_seconds"] = result.wall_clock_seconds;
  return out;
}

}  // namespace adiaprep

#include "adiaprep/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace adiaprep {

MeanEstimator parse_mean_estimator(std::string_view name) {
  if (name == "minmax") return MeanEstimator::min_max;
  if (name == "arithmetic") return MeanEstimator::arithmetic;
  throw AnalysisError("unknown mean estimator '" + std::string(name) + "' (expected minmax or arithmetic)");
}

std::string to_string(MeanEstimator estimator) {
  return estimator == MeanEstimator::min_max ? "minmax" : "arithmetic";
}

std::string to_string(DiagnosisKind kind) {
  return kind == DiagnosisKind::anti_commuting ? "anti-commuting" : "general";
}

double OscillationStats::signal_variance() const { return std::max(0.0, variance - shot_noise_floor); }

double OscillationStats::mean(MeanEstimator estimator) const {
  return estimator == MeanEstimator::min_max ? mean_minmax : mean_arith;
}

OscillationStats oscillation_stats(std::span<const double> values, double spacing,
                                   double angular_frequency, std::span<const double> standard_errors) {
  if (!(angular_frequency > 0.0) || !std::isfinite(angular_frequency)) {
    throw AnalysisError("angular frequency must be > 0");
  }
  if (!(spacing > 0.0)) throw AnalysisError("sample spacing must be > 0");
  const double period = 2.0 * std::numbers::pi / angular_frequency;
  const double per_period = period / spacing;
  if (per_period < kMinSamplesPerPeriod - 1e-9) {
    std::ostringstream msg;
    msg << "series has " << per_period << " samples per period, need at least " << kMinSamplesPerPeriod;
    throw AnalysisError(msg.str());
  }
  const std::size_t n = values.size();
  const double covered = static_cast<double>(n) * spacing;
  const int periods = static_cast<int>(std::floor(covered / period + 1e-9));
  if (periods < 1) {
    std::ostringstream msg;
    msg << "series covers " << covered / period << " periods, need at least one full period";
    throw AnalysisError(msg.str());
  }
  const auto window = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::llround(periods * period / spacing)));
  const auto w = values.first(window);

  OscillationStats st;
  st.window_periods = periods;
  st.window_samples = window;
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  st.minimum = *lo;
  st.maximum = *hi;
  st.mean_minmax = 0.5 * (st.maximum + st.minimum);
  st.peak_to_peak = st.maximum - st.minimum;
  st.amplitude = 0.5 * st.peak_to_peak;

  double sum = 0.0;
  for (double x : w) sum += x;
  st.mean_arith = sum / static_cast<double>(window);
  double ss = 0.0;
  for (double x : w) ss += (x - st.mean_arith) * (x - st.mean_arith);
  st.variance = ss / static_cast<double>(window);

  if (!standard_errors.empty()) {
    if (standard_errors.size() != n) throw AnalysisError("standard error list length mismatch");
    double floor = 0.0;
    for (std::size_t k = 0; k < window; ++k) floor += standard_errors[k] * standard_errors[k];
    st.shot_noise_floor = floor / static_cast<double>(window);
  }
  return st;
}

OscillationStats oscillation_stats(const TimeSeries& series, double angular_frequency,
                                   SeriesChannel channel) {
  validate(series);
  if (series.size() < 2) throw AnalysisError("series needs at least two samples");
  if (channel == SeriesChannel::sampled) {
    if (!series.has_samples()) throw AnalysisError("series '" + series.observable_label + "' has no shot samples");
    return oscillation_stats(series.sampled_values, series.spacing(), angular_frequency,
                             series.standard_errors);
  }
  return oscillation_stats(series.exact_values, series.spacing(), angular_frequency);
}

double excited_weight_from_product(double product) {
  if (!std::isfinite(product)) throw AnalysisError("|alpha|^2|beta|^2 is not finite");
  const double x = std::max(0.0, product);
  const double discriminant = 1.0 - 4.0 * x;
  if (discriminant <= 1e-10) {
    std::ostringstream msg;
    msg << "|alpha|^2|beta|^2 = " << x << " admits no excited weight below 1/2 (limit 1/4)";
    throw AnalysisError(msg.str());
  }
  // 2x / (1 + sqrt(1 - 4x)) is the small root without cancellation.
  return 2.0 * x / (1.0 + std::sqrt(discriminant));
}

VacuumDiagnosis diagnose_anticommuting(const OscillationStats& stats, const DiagnosisOptions& options,
                                       double variance_weight, double conserved_ground,
                                       double conserved_excited) {
  if (!(variance_weight > 0.0)) throw AnalysisError("variance weight must be > 0");
  VacuumDiagnosis d;
  d.model_kind = DiagnosisKind::anti_commuting;
  d.mean_estimator = options.mean_estimator;
  d.alpha_beta_sq = stats.signal_variance() / variance_weight;
  d.beta_sq = excited_weight_from_product(d.alpha_beta_sq);
  d.beta_sq_shortcut = d.alpha_beta_sq;
  d.raw_average = stats.mean(options.mean_estimator);
  d.corrected_value = d.raw_average;
  d.reference_value = options.reference_value;
  d.predicted_conserved = conserved_ground + d.beta_sq * (conserved_excited - conserved_ground);
  return d;
}

VacuumDiagnosis diagnose_general(const OscillationStats& stats, double variance_weight,
                                 const DiagnosisOptions& options) {
  if (!(variance_weight > 0.0)) throw AnalysisError("variance weight must be > 0");
  VacuumDiagnosis d;
  d.model_kind = DiagnosisKind::general;
  d.mean_estimator = options.mean_estimator;
  d.alpha_beta_sq = stats.signal_variance() / variance_weight;
  d.beta_sq = excited_weight_from_product(d.alpha_beta_sq);
  d.beta_sq_shortcut = d.alpha_beta_sq;
  const double shrink = 1.0 - 2.0 * d.beta_sq;
  if (!(shrink > 0.0)) throw AnalysisError("1 - 2 beta_sq must be > 0");
  d.raw_average = stats.mean(options.mean_estimator);
  d.corrected_value = d.raw_average / shrink;
  d.reference_value = options.reference_value;
  return d;
}

ObservableProfile observable_profile(const ModelSpec& spec, const HermitianOperator& o) {
  if (o.dim() != spec.dim()) throw AnalysisError("observable '" + o.label() + "' has wrong dimension");
  const auto g = spec.reference_ground_state.amplitudes();
  const auto e = spec.reference_excited_state.amplitudes();
  const ComplexVector og = adiaprep::apply(o.matrix(), g);
  const ComplexVector oe = adiaprep::apply(o.matrix(), e);
  ObservableProfile p;
  p.ground_value = inner(g, og).real();
  p.excited_value = inner(e, oe).real();
  p.transition_modulus = std::abs(inner(g, oe));

  const ComplexMatrix& a = o.matrix();
  const ComplexMatrix& h = spec.target.matrix();
  const ComplexMatrix ah = a * h, ha = h * a;
  const double scale = std::max(1.0, a.frobenius_norm() * h.frobenius_norm());
  p.anticommutes_with_target = (ah + ha).frobenius_norm() < 1e-12 * scale;
  p.commutes_with_target = (ah - ha).frobenius_norm() < 1e-12 * scale;
  return p;
}

double oscillation_frequency(const ModelSpec& spec) {
  if (spec.kind != ModelKind::custom) return 2.0 * spec.coupling;
  const auto& ev = spec.target.eigensystem().eigenvalues;
  return ev[1] - ev[0];
}

TimeSeries predicted_series(const ResidualDecomposition& dec, const ModelSpec& spec,
                            std::string_view observable_label, double start_time,
                            std::span<const double> times) {
  const double j = spec.coupling;
  const double ab = dec.alpha_mod * dec.beta_mod;
  const double b2 = dec.beta_sq;
  const double r2 = std::numbers::sqrt2;

  std::function<double(double)> curve;
  if (spec.kind == ModelKind::model_one && observable_label == "Z") {
    curve = [=](double tau) { return 2.0 * ab * std::cos(2.0 * j * tau + dec.theta); };
  } else if (spec.kind == ModelKind::model_one && observable_label == "-X") {
    curve = [=](double) { return -dec.alpha_mod * dec.alpha_mod + b2; };
  } else if (spec.kind == ModelKind::model_two && observable_label == "Z") {
    curve = [=](double tau) { return (1.0 - 2.0 * b2) / r2 + r2 * ab * std::cos(2.0 * j * tau + dec.theta); };
  } else {
    throw AnalysisError("no closed-form hold curve for observable '" + std::string(observable_label) +
                        "' of model '" + spec.name + "'");
  }

  TimeSeries out;
  out.observable_label = std::string(observable_label);
  out.start_time = start_time;
  out.times.assign(times.begin(), times.end());
  if (times.size() >= 2) out.sample_dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  out.exact_values.reserve(times.size());
  for (double t : times) out.exact_values.push_back(curve(t - start_time));
  return out;
}

}  // namespace adiaprep

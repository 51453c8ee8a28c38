// Oscillation statistics over the hold window, excited-weight extraction and
// the corrected vacuum expectation value.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "adiaprep/evolve.hpp"
#include "adiaprep/measure.hpp"
#include "adiaprep/model.hpp"

namespace adiaprep {

class AnalysisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kMinSamplesPerPeriod = 16.0;

enum class MeanEstimator { min_max, arithmetic };
MeanEstimator parse_mean_estimator(std::string_view name);
std::string to_string(MeanEstimator estimator);

enum class SeriesChannel { exact, sampled };

struct OscillationStats {
  double maximum = 0.0;
  double minimum = 0.0;
  double mean_minmax = 0.0;
  double mean_arith = 0.0;
  /// Population variance over the window.
  double variance = 0.0;
  double peak_to_peak = 0.0;
  double amplitude = 0.0;
  int window_periods = 0;
  std::size_t window_samples = 0;
  /// Mean squared per-point standard error over the window (0 for exact data).
  double shot_noise_floor = 0.0;

  /// variance - shot_noise_floor, clamped at 0.
  double signal_variance() const;
  double mean(MeanEstimator estimator) const;
};

/// Statistics over the largest prefix of the series that spans an integer
/// number of periods 2*pi/angular_frequency. Requires >= 16 samples per
/// period and at least one full period.
OscillationStats oscillation_stats(std::span<const double> values, double spacing,
                                   double angular_frequency,
                                   std::span<const double> standard_errors = {});
OscillationStats oscillation_stats(const TimeSeries& series, double angular_frequency,
                                   SeriesChannel channel = SeriesChannel::exact);

enum class DiagnosisKind { anti_commuting, general };
std::string to_string(DiagnosisKind kind);

struct VacuumDiagnosis {
  DiagnosisKind model_kind = DiagnosisKind::general;
  /// Smaller root of b (1 - b) = alpha_beta_sq.
  double beta_sq = 0.0;
  /// |alpha| ~ 1 approximation: beta_sq ~ alpha_beta_sq.
  double beta_sq_shortcut = 0.0;
  double alpha_beta_sq = 0.0;
  double raw_average = 0.0;
  double corrected_value = 0.0;
  std::optional<double> reference_value;
  /// Expected time average of the conserved observable (-X for model 1).
  std::optional<double> predicted_conserved;
  MeanEstimator mean_estimator = MeanEstimator::min_max;
};

struct DiagnosisOptions {
  MeanEstimator mean_estimator = MeanEstimator::min_max;
  std::optional<double> reference_value;
};

/// Smaller root of b (1 - b) = product. Throws AnalysisError when no root
/// below 1/2 exists.
double excited_weight_from_product(double product);

/// Observable anti-commuting with HT: the series is 2|ab||O_ge| cos(...) with
/// zero offset, so variance = variance_weight * |a|^2 |b|^2 with
/// variance_weight = 2 |O_ge|^2 (2 for Z in model 1). The time average needs
/// no correction. The conserved observable prediction uses its ground and
/// excited expectation values (-1 and +1 for -X).
VacuumDiagnosis diagnose_anticommuting(const OscillationStats& stats, const DiagnosisOptions& options = {},
                                       double variance_weight = 2.0, double conserved_ground = -1.0,
                                       double conserved_excited = 1.0);

/// Observable with offset c (1 - 2|b|^2): variance = variance_weight * |a|^2 |b|^2
/// (variance_weight = 1 for Z in model 2) and corrected = raw / (1 - 2 beta_sq).
VacuumDiagnosis diagnose_general(const OscillationStats& stats, double variance_weight = 1.0,
                                 const DiagnosisOptions& options = {});

/// Matrix elements of an observable in the reference two-level basis.
struct ObservableProfile {
  double ground_value = 0.0;
  double excited_value = 0.0;
  double transition_modulus = 0.0;
  bool anticommutes_with_target = false;
  bool commutes_with_target = false;
  /// 2 |O_ge|^2.
  double variance_weight() const { return 2.0 * transition_modulus * transition_modulus; }
};
ObservableProfile observable_profile(const ModelSpec& spec, const HermitianOperator& o);

/// 2J for the presets, E1 - E0 of HT otherwise.
double oscillation_frequency(const ModelSpec& spec);

/// Closed-form hold-phase curve for the preset models (model 1: Z and -X;
/// model 2: Z). Throws AnalysisError for anything else.
TimeSeries predicted_series(const ResidualDecomposition& dec, const ModelSpec& spec,
                            std::string_view observable_label, double start_time,
                            std::span<const double> times);

}  // namespace adiaprep

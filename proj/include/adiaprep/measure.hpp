// Expectation values, Born-rule shot sampling and hold-phase time series.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "adiaprep/model.hpp"
#include "adiaprep/state_vector.hpp"

namespace adiaprep {

class MeasureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Deterministic pseudorandom stream. Sub-streams are derived by hashing the
/// parent seed with a label or an index, so streams can be consumed in any order.
class ShotSampler {
 public:
  explicit ShotSampler(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  ShotSampler for_stream(std::string_view label) const;
  ShotSampler for_point(std::uint64_t index) const;
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer over the pair (a, b).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

struct ShotEstimate {
  double mean = 0.0;
  /// Unbiased sample variance of the individual outcomes.
  double outcome_variance = 0.0;
  double standard_error = 0.0;
  std::uint64_t shots = 0;
};

/// <v|o|v>. Throws MeasureError on dimension mismatch or a non-negligible imaginary part.
double expectation(const StateVector& v, const HermitianOperator& o);

/// |<phi_k|v>|^2 over the eigenvectors of o, in eigensystem order.
std::vector<double> born_probabilities(const StateVector& v, const HermitianOperator& o);

/// Draws `shots` eigenvalue outcomes of o from the Born distribution and
/// returns their mean. Outcome counts are drawn as a multinomial through
/// sequential conditional binomials, which has the same law as drawing shots
/// one at a time.
ShotEstimate sample_expectation(const StateVector& v, const HermitianOperator& o, std::uint64_t shots,
                                ShotSampler& sampler);

struct TimeSeries {
  std::string observable_label;
  /// Time at which the hold phase starts (t = T).
  double start_time = 0.0;
  /// Absolute times t >= T, uniformly spaced.
  std::vector<double> times;
  /// Grid spacing; times[k] = start_time + k * sample_dt.
  double sample_dt = 0.0;
  std::vector<double> exact_values;
  /// Empty when shots_per_point == 0.
  std::vector<double> sampled_values;
  std::vector<double> standard_errors;
  std::uint64_t shots_per_point = 0;

  std::size_t size() const { return times.size(); }
  bool has_samples() const { return !sampled_values.empty(); }
  /// sample_dt when set, otherwise the mean spacing of `times`.
  double spacing() const;
  /// k * spacing(), the time since the hold started.
  double elapsed(std::size_t k) const;
};

/// Throws MeasureError if the TimeSeries invariants are violated.
void validate(const TimeSeries& series);

enum class HoldMethod { exact, trotter2 };
HoldMethod parse_hold_method(std::string_view name);
std::string to_string(HoldMethod method);

struct HoldGrid {
  double start_time = 0.0;
  double duration = 0.0;
  double sample_dt = 0.0;

  /// floor(duration / sample_dt) + 1 points, both ends included.
  std::size_t num_points() const;
};

/// Evolves v_T under the constant target Hamiltonian and records <o> at each
/// grid time. With shots > 0 each point also gets a shot estimate drawn from
/// sampler.for_stream(o.label()).for_point(k).
TimeSeries hold_series(const StateVector& v_T, const ModelSpec& spec, const HermitianOperator& o,
                       const HoldGrid& grid, std::uint64_t shots, const ShotSampler& sampler,
                       HoldMethod method = HoldMethod::exact);

/// exp(iHt) Z exp(-iHt) for H = -J Hadamard:
/// H/sqrt2 - Y sin(2Jt)/sqrt2 + (Z - X) cos(2Jt)/2.
HermitianOperator heisenberg_z_closed_form(double t, double coupling);

}  // namespace adiaprep

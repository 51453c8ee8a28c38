#include "adiaprep/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "adiaprep/evolve.hpp"

namespace adiaprep {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

void require_dim(const StateVector& v, const HermitianOperator& o) {
  if (v.dim() != o.dim()) {
    throw MeasureError("state dimension " + std::to_string(v.dim()) + " does not match observable '" +
                       o.label() + "' dimension " + std::to_string(o.dim()));
  }
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) { return splitmix64(splitmix64(a) ^ b); }

ShotSampler::ShotSampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

ShotSampler ShotSampler::for_stream(std::string_view label) const {
  return ShotSampler(mix_seed(seed_, fnv1a(label)));
}

ShotSampler ShotSampler::for_point(std::uint64_t index) const {
  return ShotSampler(mix_seed(seed_ ^ 0xA5A5A5A5A5A5A5A5ULL, index));
}

double expectation(const StateVector& v, const HermitianOperator& o) {
  require_dim(v, o);
  const Complex value = inner(v.amplitudes(), adiaprep::apply(o.matrix(), v.amplitudes()));
  const double scale = std::max(1.0, o.matrix().frobenius_norm());
  if (std::abs(value.imag()) > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "expectation of '" << o.label() << "' has imaginary part " << value.imag();
    throw MeasureError(msg.str());
  }
  return value.real();
}

std::vector<double> born_probabilities(const StateVector& v, const HermitianOperator& o) {
  require_dim(v, o);
  const auto& eig = o.eigensystem();
  std::vector<double> p(eig.dim());
  double total = 0.0;
  for (std::size_t k = 0; k < eig.dim(); ++k) {
    Complex amp{0.0, 0.0};
    for (std::size_t i = 0; i < v.dim(); ++i) amp += std::conj(eig.eigenvectors(i, k)) * v[i];
    p[k] = std::norm(amp);
    total += p[k];
  }
  for (auto& x : p) x /= total;
  return p;
}

ShotEstimate sample_expectation(const StateVector& v, const HermitianOperator& o, std::uint64_t shots,
                                ShotSampler& sampler) {
  if (shots == 0) throw MeasureError("sample_expectation: shots must be >= 1");
  const auto p = born_probabilities(v, o);
  const auto& lambda = o.eigensystem().eigenvalues;

  std::vector<std::uint64_t> counts(p.size(), 0);
  std::uint64_t remaining = shots;
  double mass_left = 1.0;
  for (std::size_t k = 0; k < p.size() && remaining > 0; ++k) {
    if (k + 1 == p.size() || mass_left <= 0.0) {
      counts[k] = remaining;
      remaining = 0;
      break;
    }
    const double q = std::clamp(p[k] / mass_left, 0.0, 1.0);
    std::uint64_t drawn = 0;
    if (q >= 1.0) {
      drawn = remaining;
    } else if (q > 0.0) {
      std::binomial_distribution<std::uint64_t> dist(remaining, q);
      drawn = dist(sampler.engine());
    }
    counts[k] = drawn;
    remaining -= drawn;
    mass_left -= p[k];
  }

  const double n = static_cast<double>(shots);
  double mean = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) mean += static_cast<double>(counts[k]) * lambda[k];
  mean /= n;
  double ss = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = lambda[k] - mean;
    ss += static_cast<double>(counts[k]) * d * d;
  }
  ShotEstimate est;
  est.mean = mean;
  est.shots = shots;
  est.outcome_variance = shots > 1 ? ss / (n - 1.0) : 0.0;
  est.standard_error = std::sqrt(est.outcome_variance / n);
  return est;
}

double TimeSeries::spacing() const {
  if (sample_dt > 0.0) return sample_dt;
  if (times.size() < 2) return 0.0;
  return (times.back() - times.front()) / static_cast<double>(times.size() - 1);
}

double TimeSeries::elapsed(std::size_t k) const {
  return sample_dt > 0.0 ? static_cast<double>(k) * sample_dt : times[k] - start_time;
}

void validate(const TimeSeries& series) {
  const std::size_t n = series.times.size();
  if (series.exact_values.size() != n) throw MeasureError("time series: exact_values length mismatch");
  if (series.has_samples() &&
      (series.sampled_values.size() != n || series.standard_errors.size() != n)) {
    throw MeasureError("time series: sampled_values length mismatch");
  }
  if (n < 2) return;
  const double h = series.spacing();
  if (!(h > 0.0)) throw MeasureError("time series: times must be strictly increasing");
  for (std::size_t k = 1; k < n; ++k) {
    const double step = series.times[k] - series.times[k - 1];
    if (std::abs(step - h) > 1e-12 * std::max(1.0, std::abs(series.times[k]))) {
      throw MeasureError("time series: spacing is not uniform");
    }
  }
}

HoldMethod parse_hold_method(std::string_view name) {
  if (name == "exact") return HoldMethod::exact;
  if (name == "trotter2") return HoldMethod::trotter2;
  throw MeasureError("unknown hold method '" + std::string(name) + "' (expected exact or trotter2)");
}

std::string to_string(HoldMethod method) { return method == HoldMethod::exact ? "exact" : "trotter2"; }

std::size_t HoldGrid::num_points() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw MeasureError("hold duration must be > 0");
  if (!(sample_dt > 0.0) || !std::isfinite(sample_dt)) throw MeasureError("sample_dt must be > 0");
  return static_cast<std::size_t>(std::floor(duration / sample_dt + 1e-9)) + 1;
}

TimeSeries hold_series(const StateVector& v_T, const ModelSpec& spec, const HermitianOperator& o,
                       const HoldGrid& grid, std::uint64_t shots, const ShotSampler& sampler,
                       HoldMethod method) {
  require_dim(v_T, o);
  if (v_T.dim() != spec.dim()) throw MeasureError("state does not match the model dimension");
  const std::size_t n = grid.num_points();

  TimeSeries series;
  series.observable_label = o.label();
  series.start_time = grid.start_time;
  series.shots_per_point = shots;
  series.sample_dt = grid.sample_dt;
  series.times.resize(n);
  series.exact_values.resize(n);
  if (shots > 0) {
    series.sampled_values.resize(n);
    series.standard_errors.resize(n);
  }

  // Coefficients of v_T in the eigenbasis of the target Hamiltonian.
  const auto& eig = spec.target.eigensystem();
  const std::size_t dim = eig.dim();
  ComplexVector coeff(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    Complex c{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) c += std::conj(eig.eigenvectors(i, k)) * v_T[i];
    coeff[k] = c;
  }

  const ShotSampler stream = sampler.for_stream(o.label());
  StateVector stepped = v_T;
  for (std::size_t k = 0; k < n; ++k) {
    const double tau = static_cast<double>(k) * grid.sample_dt;
    series.times[k] = grid.start_time + tau;

    StateVector state;
    if (method == HoldMethod::exact) {
      ComplexVector amps(dim, Complex{0.0, 0.0});
      for (std::size_t j = 0; j < dim; ++j) {
        const Complex w = coeff[j] * std::polar(1.0, -eig.eigenvalues[j] * tau);
        for (std::size_t i = 0; i < dim; ++i) amps[i] += w * eig.eigenvectors(i, j);
      }
      state = StateVector(std::move(amps));
    } else {
      if (k > 0) stepped = split_step(stepped, spec, 1.0, grid.sample_dt);
      state = stepped;
    }

    series.exact_values[k] = expectation(state, o);
    if (shots > 0) {
      ShotSampler point = stream.for_point(k);
      const auto est = sample_expectation(state, o, shots, point);
      series.sampled_values[k] = est.mean;
      series.standard_errors[k] = est.standard_error;
    }
  }
  return series;
}

HermitianOperator heisenberg_z_closed_form(double t, double coupling) {
  using namespace std::complex_literals;
  const double r = 1.0 / std::numbers::sqrt2;
  const double c = std::cos(2.0 * coupling * t);
  const double s = std::sin(2.0 * coupling * t);
  const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const ComplexMatrix y{{0.0, -1i}, {1i, 0.0}};
  const ComplexMatrix z{{1.0, 0.0}, {0.0, -1.0}};
  const ComplexMatrix h = (x + z) * r;
  ComplexMatrix m = h * r - y * (r * s) + (z - x) * (0.5 * c);
  return HermitianOperator(std::move(m), "Z_H(t)");
}

}  // namespace adiaprep

#include "adiaprep/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace adiaprep {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

ComplexMatrix single_qubit(char name) {
  using namespace std::complex_literals;
  switch (name) {
    case 'I': return {{1.0, 0.0}, {0.0, 1.0}};
    case 'X': return {{0.0, 1.0}, {1.0, 0.0}};
    case 'Y': return {{0.0, -1i}, {1i, 0.0}};
    case 'Z': return {{1.0, 0.0}, {0.0, -1.0}};
    case 'H': {
      const double h = 1.0 / kSqrt2;
      return {{h, h}, {h, -h}};
    }
    default: throw ModelError(std::string("unknown single-qubit operator '") + name + "'");
  }
}

void require_coupling(double coupling) {
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    std::ostringstream msg;
    msg << "coupling J must be finite and > 0, got " << coupling;
    throw ModelError(msg.str());
  }
}

double residual_of_eigenpair(const ComplexMatrix& h, std::span<const Complex> v, double lambda) {
  const ComplexVector hv = adiaprep::apply(h, v);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::norm(hv[i] - lambda * v[i]);
  return std::sqrt(acc);
}

double rayleigh(const ComplexMatrix& h, std::span<const Complex> v) {
  return inner(v, adiaprep::apply(h, v)).real();
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix matrix, std::string label,
                                     const LinalgTolerances& tol)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
  if (matrix_.empty()) throw ModelError("operator '" + label_ + "' is empty");
  try {
    eig_ = std::make_shared<const EigenSystem>(eig_hermitian(matrix_, tol));
  } catch (const LinalgError& e) {
    throw ModelError("operator '" + label_ + "': " + e.what());
  }
}

HermitianOperator pauli(std::string_view name) {
  if (name.size() != 1 || std::string_view("IXYZH").find(name[0]) == std::string_view::npos) {
    throw ModelError("unknown Pauli name '" + std::string(name) + "' (expected one of I, X, Y, Z, H)");
  }
  return HermitianOperator(single_qubit(name[0]), std::string(name));
}

HermitianOperator observable_from_label(std::string_view label, std::size_t num_qubits) {
  std::string_view body = label;
  double sign = 1.0;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    if (body.front() == '-') sign = -1.0;
    body.remove_prefix(1);
  }
  if (body.size() != num_qubits || body.empty()) {
    throw ModelError("observable '" + std::string(label) + "' must have exactly " +
                     std::to_string(num_qubits) + " factor(s) from I, X, Y, Z, H");
  }
  ComplexMatrix m = single_qubit(body[0]);
  for (std::size_t q = 1; q < body.size(); ++q) m = kron(m, single_qubit(body[q]));
  m *= sign;
  return HermitianOperator(std::move(m), std::string(label));
}

const HermitianOperator& ModelSpec::observable(std::string_view label) const {
  for (const auto& o : observables)
    if (o.label() == label) return o;
  throw ModelError("model '" + name + "' has no observable '" + std::string(label) + "'");
}

ModelSpec model_one(double coupling) {
  require_coupling(coupling);
  ModelSpec spec;
  spec.kind = ModelKind::model_one;
  spec.name = "model1";
  spec.coupling = coupling;
  spec.initial = HermitianOperator(single_qubit('Z') * (-coupling), "-JZ");
  spec.target = HermitianOperator(single_qubit('X') * (-coupling), "-JX");
  spec.observables = {pauli("Z"), observable_from_label("-X", 1)};
  const double h = 1.0 / kSqrt2;
  spec.reference_ground_state = StateVector({h, h});
  spec.reference_excited_state = StateVector({h, -h});
  validate(spec);
  return spec;
}

ModelSpec model_two(double coupling) {
  require_coupling(coupling);
  ModelSpec spec;
  spec.kind = ModelKind::model_two;
  spec.name = "model2";
  spec.coupling = coupling;
  spec.initial = HermitianOperator(single_qubit('Z') * (-coupling), "-JZ");
  spec.target = HermitianOperator(single_qubit('H') * (-coupling), "-JH");
  spec.observables = {pauli("Z")};
  const double np = std::sqrt(4.0 - 2.0 * kSqrt2);
  const double nm = std::sqrt(4.0 + 2.0 * kSqrt2);
  spec.reference_ground_state = StateVector({1.0 / np, (kSqrt2 - 1.0) / np});
  spec.reference_excited_state = StateVector({1.0 / nm, -(kSqrt2 + 1.0) / nm});
  validate(spec);
  return spec;
}

ModelSpec custom_model(HermitianOperator initial, HermitianOperator target,
                       std::vector<HermitianOperator> observables, double coupling) {
  require_coupling(coupling);
  ModelSpec spec;
  spec.kind = ModelKind::custom;
  spec.name = "custom";
  spec.coupling = coupling;
  spec.initial = std::move(initial);
  spec.target = std::move(target);
  spec.observables = std::move(observables);
  if (spec.target.dim() < 2) throw ModelError("target Hamiltonian must have dimension >= 2");
  const auto& eig = spec.target.eigensystem();
  const double scale = std::max(1.0, spec.target.matrix().frobenius_norm());
  if (eig.eigenvalues[1] - eig.eigenvalues[0] <= LinalgTolerances{}.degeneracy * scale) {
    throw ModelError("target Hamiltonian has a degenerate ground state");
  }
  spec.reference_ground_state = StateVector::normalized(eig.eigenvector(0));
  spec.reference_excited_state = StateVector::normalized(eig.eigenvector(1));
  validate(spec);
  return spec;
}

void validate(const ModelSpec& spec) {
  require_coupling(spec.coupling);
  const std::size_t dim = spec.target.dim();
  if (dim < 2 || !std::has_single_bit(dim) || dim > (std::size_t{1} << kMaxQubits)) {
    throw ModelError("Hamiltonian dimension must be 2^n with 1 <= n <= 12, got " + std::to_string(dim));
  }
  if (spec.initial.dim() != dim) throw ModelError("initial and target Hamiltonians differ in dimension");
  for (const auto& o : spec.observables) {
    if (o.dim() != dim) throw ModelError("observable '" + o.label() + "' has wrong dimension");
  }
  const auto& g = spec.reference_ground_state;
  const auto& e = spec.reference_excited_state;
  if (g.dim() != dim || e.dim() != dim) throw ModelError("reference states have wrong dimension");
  if (std::abs(inner(g.amplitudes(), e.amplitudes())) > 1e-10) {
    throw ModelError("reference states are not orthogonal");
  }
  const auto& h = spec.target.matrix();
  const double scale = std::max(1.0, h.frobenius_norm());
  const double eg = rayleigh(h, g.amplitudes());
  const double ee = rayleigh(h, e.amplitudes());
  if (residual_of_eigenpair(h, g.amplitudes(), eg) > 1e-12 * scale ||
      residual_of_eigenpair(h, e.amplitudes(), ee) > 1e-12 * scale) {
    throw ModelError("reference states are not eigenvectors of the target Hamiltonian");
  }
  if (!(eg < ee)) throw ModelError("reference ground state must have the lower eigenvalue");
  const double emin = spec.target.eigensystem().eigenvalues.front();
  if (std::abs(eg - emin) > 1e-10 * scale) {
    throw ModelError("reference ground state is not the lowest eigenvector of the target");
  }
}

AdiabaticSchedule::AdiabaticSchedule(double total_time, double step_width, ScheduleProfile profile)
    : total_time_(total_time), step_width_(step_width), profile_(profile) {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) throw ModelError("total_time T must be > 0");
  if (!(step_width > 0.0) || !std::isfinite(step_width)) throw ModelError("step_width dt must be > 0");
  const double ratio = total_time / step_width;
  if (ratio < 0.5) throw ModelError("step_width dt must not exceed total_time T");
  num_steps_ = static_cast<std::size_t>(std::llround(ratio));
  if (num_steps_ == 0) num_steps_ = 1;
  mismatch_ = std::abs(ratio - static_cast<double>(num_steps_));
}

void AdiabaticSchedule::require_in_range(double t) const {
  const double slack = 1e-12 * std::max(1.0, total_time_);
  if (!(t >= -slack && t <= total_time_ + slack)) {
    std::ostringstream msg;
    msg << "time " << t << " outside schedule range [0, " << total_time_ << "]";
    throw ModelError(msg.str());
  }
}

double AdiabaticSchedule::s(double t) const {
  require_in_range(t);
  switch (profile_) {
    case ScheduleProfile::linear: return std::clamp(t / total_time_, 0.0, 1.0);
  }
  return 0.0;
}

HermitianOperator interpolate(const ModelSpec& spec, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ModelError("interpolation parameter s must lie in [0, 1]");
  if (s == 0.0) return spec.initial;
  if (s == 1.0) return spec.target;
  ComplexMatrix h = spec.initial.matrix() * (1.0 - s) + spec.target.matrix() * s;
  std::ostringstream label;
  label << "H_A(s=" << s << ")";
  return HermitianOperator(std::move(h), label.str());
}

HermitianOperator hamiltonian_at(const ModelSpec& spec, const AdiabaticSchedule& schedule, double t) {
  return interpolate(spec, schedule.s(t));
}

double spectral_gap_at(const ModelSpec& spec, const AdiabaticSchedule& schedule, double t) {
  const auto h = hamiltonian_at(spec, schedule, t);
  const auto& ev = h.eigensystem().eigenvalues;
  if (ev.size() < 2) throw ModelError("spectral gap needs dimension >= 2");
  return ev[1] - ev[0];
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::model_one: return "model1";
    case ModelKind::model_two: return "model2";
    case ModelKind::custom: return "custom";
  }
  return "custom";
}

}  // namespace adiaprep

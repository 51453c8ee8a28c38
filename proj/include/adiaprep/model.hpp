// Hamiltonians, observables and the linear interpolation used for adiabatic
// state preparation, plus the two single-qubit benchmark models.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adiaprep/linalg.hpp"
#include "adiaprep/state_vector.hpp"

namespace adiaprep {

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxQubits = 12;

/// Hermitian matrix with a label and its eigendecomposition (computed once).
class HermitianOperator {
 public:
  HermitianOperator() = default;
  /// Throws ModelError when `matrix` is not Hermitian within tol.hermitian.
  HermitianOperator(ComplexMatrix matrix, std::string label, const LinalgTolerances& tol = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  const EigenSystem& eigensystem() const { return *eig_; }
  std::size_t dim() const { return matrix_.dim(); }

 private:
  ComplexMatrix matrix_;
  std::string label_;
  std::shared_ptr<const EigenSystem> eig_;
};

/// Single-qubit I, X, Y, Z or Hadamard H = (X+Z)/sqrt(2).
HermitianOperator pauli(std::string_view name);

/// Observable from a label such as "Z", "-X" or "ZI" (tensor product of
/// single-qubit factors, most significant qubit first, optional leading '-').
HermitianOperator observable_from_label(std::string_view label, std::size_t num_qubits);

enum class ModelKind { model_one, model_two, custom };

struct ModelSpec {
  ModelKind kind = ModelKind::custom;
  std::string name;
  HermitianOperator initial;
  HermitianOperator target;
  double coupling = 1.0;
  std::vector<HermitianOperator> observables;
  StateVector reference_ground_state;
  StateVector reference_excited_state;

  std::size_t dim() const { return target.dim(); }
  /// Throws ModelError if no observable has this label.
  const HermitianOperator& observable(std::string_view label) const;
};

/// H0 = -J Z, HT = -J X. Observables Z and -X. Reference states |+>, |->.
ModelSpec model_one(double coupling);
/// H0 = -J Z, HT = -J H. Observable Z. Reference states |h+>, |h->.
ModelSpec model_two(double coupling);
/// Arbitrary dense Hamiltonians of dimension 2^n; reference states from the
/// two lowest eigenvectors of `target`.
ModelSpec custom_model(HermitianOperator initial, HermitianOperator target,
                       std::vector<HermitianOperator> observables, double coupling = 1.0);

/// Throws ModelError when the ModelSpec invariants do not hold.
void validate(const ModelSpec& spec);

enum class ScheduleProfile { linear };

class AdiabaticSchedule {
 public:
  /// Throws ModelError unless total_time > 0, step_width > 0, step_width <= total_time.
  AdiabaticSchedule(double total_time, double step_width,
                    ScheduleProfile profile = ScheduleProfile::linear);

  double total_time() const { return total_time_; }
  /// Requested step width.
  double step_width() const { return step_width_; }
  ScheduleProfile profile() const { return profile_; }

  /// N = round(T / dt).
  std::size_t num_steps() const { return num_steps_; }
  /// T / N, the width actually integrated.
  double effective_step() const { return total_time_ / static_cast<double>(num_steps_); }
  /// |T/dt - N|; nonzero means the requested width was adjusted.
  double discretization_mismatch() const { return mismatch_; }
  bool has_mismatch() const { return mismatch_ > 1e-9; }

  /// Interpolation parameter s(t) in [0, 1]. Throws outside [0, T].
  double s(double t) const;
  void require_in_range(double t) const;

 private:
  double total_time_;
  double step_width_;
  ScheduleProfile profile_;
  std::size_t num_steps_;
  double mismatch_;
};

/// (1 - s) H0 + s HT.
HermitianOperator interpolate(const ModelSpec& spec, double s);
HermitianOperator hamiltonian_at(const ModelSpec& spec, const AdiabaticSchedule& schedule, double t);
/// E1 - E0 of H_A(s(t)).
double spectral_gap_at(const ModelSpec& spec, const AdiabaticSchedule& schedule, double t);

std::string to_string(ModelKind kind);

}  // namespace adiaprep

#pragma once

#include <cstddef>
#include <span>

#include "adiaprep/linalg.hpp"

namespace adiaprep {

/// Normalized amplitude vector over 2^n basis states.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-10;

  StateVector() = default;
  /// Throws LinalgError unless ||amplitudes|| = 1 within kNormTolerance.
  explicit StateVector(ComplexVector amplitudes);

  /// Rescales to unit norm. Throws on the zero vector.
  static StateVector normalized(ComplexVector amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  double norm() const { return adiaprep::norm(amps_); }

 private:
  ComplexVector amps_;
};

}  // namespace adiaprep

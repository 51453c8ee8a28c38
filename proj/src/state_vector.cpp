#include "adiaprep/state_vector.hpp"

#include <cmath>
#include <string>

namespace adiaprep {

StateVector::StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw LinalgError("StateVector: empty amplitude vector");
  const double n = adiaprep::norm(amps_);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
    throw LinalgError("StateVector: norm " + std::to_string(n) + " deviates from 1");
  }
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
  const double n = adiaprep::norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw LinalgError("StateVector: cannot normalize zero vector");
  for (auto& z : amplitudes) z /= n;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw LinalgError("StateVector::basis: index out of range");
  ComplexVector v(dim, Complex{0.0, 0.0});
  v[index] = 1.0;
  return StateVector(std::move(v));
}

}  // namespace adiaprep

// Dense complex linear algebra for small Hilbert spaces (dim <= 2^12).
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace adiaprep {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Raised when a numerical precondition (hermiticity, dimension, finiteness) fails.
class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Square complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  /// Row-wise literal, e.g. {{0, 1}, {1, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of a - b. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest modulus of m - m^dagger, together with the entry where it occurs.
struct HermiticityDefect {
  double magnitude = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};
HermiticityDefect hermiticity_defect(const ComplexMatrix& m);

struct LinalgTolerances {
  double hermitian = 1e-12;
  /// Jacobi stops when off-diagonal Frobenius mass < jacobi_relative * ||m||_F.
  double jacobi_relative = 1e-14;
  int jacobi_max_sweeps = 100;
  /// Components below this modulus are skipped when fixing eigenvector phases.
  double phase_anchor = 1e-9;
  /// Eigenvalues closer than this (relative to the spectral scale) are treated as degenerate.
  double degeneracy = 1e-10;
};

/// Eigenvalues ascending; column k of `eigenvectors` belongs to eigenvalues[k].
struct EigenSystem {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  std::size_t dim() const { return eigenvalues.size(); }
  ComplexVector eigenvector(std::size_t k) const;
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Output is deterministic: eigenpairs are sorted ascending, degenerate groups
/// are ordered by the index of each vector's first component with modulus above
/// `phase_anchor`, and every vector is rotated so that component is real-positive.
/// Throws LinalgError naming the worst entry when m is not Hermitian.
EigenSystem eig_hermitian(const ComplexMatrix& m, const LinalgTolerances& tol = {});

/// exp(-i m t) = V diag(exp(-i lambda t)) V^dagger. Exactly the identity at t = 0.
ComplexMatrix expm_minus_i(const EigenSystem& eig, double t);
ComplexMatrix expm_minus_i(const ComplexMatrix& m, double t, const LinalgTolerances& tol = {});

/// V diag(f(lambda)) V^dagger for a real spectral function.
template <typename Fn>
ComplexMatrix spectral_map(const EigenSystem& eig, Fn&& fn) {
  const std::size_t n = eig.dim();
  ComplexMatrix out(n);
  std::vector<Complex> weights(n);
  for (std::size_t k = 0; k < n; ++k) weights[k] = fn(eig.eigenvalues[k]);
  const ComplexMatrix& v = eig.eigenvectors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * weights[k] * std::conj(v(j, k));
      out(i, j) = acc;
    }
  }
  return out;
}

/// Matrix-vector product. Throws LinalgError on dimension mismatch.
ComplexVector apply(const ComplexMatrix& m, std::span<const Complex> v);

/// <a|b> (conjugate-linear in a).
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);
/// ||a - b||_2.
double distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace adiaprep

#include "adiaprep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace adiaprep {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw LinalgError(msg.str());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw LinalgError("ComplexMatrix: expected " + std::to_string(dim_ * dim_) + " entries, got " +
                      std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw LinalgError("ComplexMatrix: rows must form a square matrix");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double ComplexMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& z : data_) acc += std::norm(z);
  return std::sqrt(acc);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(dim_, other.dim_, "matrix addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(dim_, other.dim_, "matrix subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix product");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double worst = 0.0;
  const auto ea = a.entries(), eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

HermiticityDefect hermiticity_defect(const ComplexMatrix& m) {
  HermiticityDefect d;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) {
      const double gap = std::abs(m(i, j) - std::conj(m(j, i)));
      if (gap > d.magnitude) d = {gap, i, j};
    }
  }
  return d;
}

ComplexVector EigenSystem::eigenvector(std::size_t k) const {
  ComplexVector v(dim());
  for (std::size_t i = 0; i < dim(); ++i) v[i] = eigenvectors(i, k);
  return v;
}

EigenSystem eig_hermitian(const ComplexMatrix& m, const LinalgTolerances& tol) {
  const std::size_t n = m.dim();
  if (n == 0) throw LinalgError("eig_hermitian: empty matrix");
  if (!m.all_finite()) throw LinalgError("eig_hermitian: matrix has non-finite entries");
  const auto defect = hermiticity_defect(m);
  if (defect.magnitude > tol.hermitian) {
    std::ostringstream msg;
    msg << "eig_hermitian: matrix is not Hermitian, |m(" << defect.row << "," << defect.col
        << ") - conj(m(" << defect.col << "," << defect.row << "))| = " << defect.magnitude
        << " exceeds " << tol.hermitian;
    throw LinalgError(msg.str());
  }

  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = tol.jacobi_relative * m.frobenius_norm();

  auto off_diagonal = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
  };

  bool converged = false;
  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    const double off = off_diagonal();
    if (off == 0.0 || off < threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const Complex phase = a(p, q) / r;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex g_pp = c, g_pq = s;
        const Complex g_qp = -s * std::conj(phase), g_qq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }
  if (const double off = converged ? 0.0 : off_diagonal(); off != 0.0 && off >= threshold) {
    throw LinalgError("eig_hermitian: Jacobi iteration did not converge in " +
                      std::to_string(tol.jacobi_max_sweeps) + " sweeps");
  }

  // Phase convention: first component above the anchor threshold is real-positive.
  std::vector<std::size_t> anchor(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = 0;
    while (i + 1 < n && std::abs(v(i, k)) <= tol.phase_anchor) ++i;
    anchor[k] = i;
    const Complex z = v(i, k);
    const Complex rot = std::conj(z) / std::abs(z);
    for (std::size_t r = 0; r < n; ++r) v(r, k) *= rot;
    v(i, k) = std::abs(z);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  double scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, std::abs(a(k, k).real()));
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && a(order[end], order[end]).real() - a(order[end - 1], order[end - 1]).real() <=
                          tol.degeneracy * scale)
      ++end;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t x, std::size_t y) { return anchor[x] < anchor[y]; });
    start = end;
  }

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

ComplexMatrix expm_minus_i(const EigenSystem& eig, double t) {
  if (!std::isfinite(t)) throw LinalgError("expm_minus_i: time must be finite");
  if (t == 0.0) return ComplexMatrix::identity(eig.dim());
  return spectral_map(eig, [t](double lambda) { return std::polar(1.0, -lambda * t); });
}

ComplexMatrix expm_minus_i(const ComplexMatrix& m, double t, const LinalgTolerances& tol) {
  if (!std::isfinite(t)) throw LinalgError("expm_minus_i: time must be finite");
  if (t == 0.0) {
    // Still validate the generator.
    const auto defect = hermiticity_defect(m);
    if (defect.magnitude > tol.hermitian) throw LinalgError("expm_minus_i: generator is not Hermitian");
    return ComplexMatrix::identity(m.dim());
  }
  return expm_minus_i(eig_hermitian(m, tol), t);
}

ComplexVector apply(const ComplexMatrix& m, std::span<const Complex> v) {
  require_same_dim(m.dim(), v.size(), "apply");
  const std::size_t n = m.dim();
  ComplexVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_dim(a.size(), b.size(), "inner");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

double distance(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_dim(a.size(), b.size(), "distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return std::sqrt(acc);
}

}  // namespace adiaprep

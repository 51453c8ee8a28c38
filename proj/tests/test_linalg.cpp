#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "adiaprep/linalg.hpp"

using namespace adiaprep;
using namespace std::complex_literals;

namespace {

const ComplexMatrix kX{{0.0, 1.0}, {1.0, 0.0}};
const ComplexMatrix kZ{{1.0, 0.0}, {0.0, -1.0}};
const double kR = 1.0 / std::numbers::sqrt2;
const ComplexMatrix kH{{kR, kR}, {kR, -kR}};

double orthonormality_defect(const ComplexMatrix& v) {
  return max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(v.dim()));
}

ComplexMatrix reconstruct(const EigenSystem& e) {
  return e.eigenvectors * ComplexMatrix::diagonal(e.eigenvalues) * e.eigenvectors.adjoint();
}

}  // namespace

TEST_CASE("eig_hermitian on Pauli Z") {
  const auto e = eig_hermitian(kZ);
  CHECK(e.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(std::abs(e.eigenvectors(1, 0) - 1.0) < 1e-15);  // |1>
  CHECK(std::abs(e.eigenvectors(0, 1) - 1.0) < 1e-15);  // |0>
}

TEST_CASE("eig_hermitian on Hadamard matches the closed-form +1 eigenvector") {
  const auto e = eig_hermitian(kH);
  CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  const double n = std::sqrt(4.0 - 2.0 * std::numbers::sqrt2);
  const ComplexVector h_plus{1.0 / n, (std::numbers::sqrt2 - 1.0) / n};
  CHECK(std::abs(std::abs(inner(h_plus, e.eigenvector(1))) - 1.0) < 1e-12);
}

TEST_CASE("eig_hermitian reconstructs a random 4x4 Hermitian matrix") {
  std::mt19937_64 rng(20240601);
  const auto u = oracle::random_unitary(4, rng);
  const std::vector<double> lambda{-2.5, -0.3, 0.7, 1.9};
  const auto m = oracle::hermitian_from(u, lambda);
  const auto e = eig_hermitian(m);
  CHECK(max_abs_diff(reconstruct(e), m) < 1e-10);
  CHECK(orthonormality_defect(e.eigenvectors) < 1e-10);
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(e.eigenvalues[k] - lambda[k]) < 1e-10);
}

TEST_CASE("eig_hermitian invariants hold for random Hermitian matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 9);
    const auto m = oracle::random_hermitian(n, rng);
    const auto e = eig_hermitian(m);
    CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
    CHECK(orthonormality_defect(e.eigenvectors) < 1e-10);
    CHECK(max_abs_diff(reconstruct(e), m) < 1e-10);
  }
}

TEST_CASE("eig_hermitian is deterministic and fixes phases") {
  std::mt19937_64 rng(99);
  const auto m = oracle::random_hermitian(6, rng);
  const auto a = eig_hermitian(m);
  const auto b = eig_hermitian(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(max_abs_diff(a.eigenvectors, b.eigenvectors) == 0.0);
  for (std::size_t k = 0; k < 6; ++k) {
    std::size_t i = 0;
    while (std::abs(a.eigenvectors(i, k)) <= 1e-9) ++i;
    CHECK(a.eigenvectors(i, k).imag() == 0.0);
    CHECK(a.eigenvectors(i, k).real() > 0.0);
  }
}

TEST_CASE("degenerate eigenvalues are ordered by first significant component") {
  // Eigenvalue 2 is twofold degenerate on span{|0>, |2>}.
  ComplexMatrix m(3);
  m(0, 0) = 2.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  const auto e = eig_hermitian(m);
  CHECK(e.eigenvalues == std::vector<double>{1.0, 2.0, 2.0});
  CHECK(std::abs(e.eigenvectors(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(e.eigenvectors(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(e.eigenvectors(2, 2) - 1.0) < 1e-15);

  const auto id = eig_hermitian(ComplexMatrix::identity(4));
  CHECK(max_abs_diff(id.eigenvectors, ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("eig_hermitian rejects non-Hermitian input and names the entry") {
  ComplexMatrix m{{1.0, 2.0}, {2.5, 1.0}};
  try {
    eig_hermitian(m);
    FAIL("expected LinalgError");
  } catch (const LinalgError& e) {
    CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
  }
  ComplexMatrix tiny{{1.0, 2.0}, {2.0 + 1e-13, 1.0}};
  CHECK_NOTHROW(eig_hermitian(tiny));
  ComplexMatrix imaginary_diag{{1.0 + 1i, 0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(eig_hermitian(imaginary_diag), LinalgError);
}

TEST_CASE("expm_minus_i elementary cases") {
  CHECK(max_abs_diff(expm_minus_i(kZ, 0.0), ComplexMatrix::identity(2)) == 0.0);

  const auto u = expm_minus_i(kZ, std::numbers::pi / 2);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -std::numbers::pi / 2)) < 1e-15);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, std::numbers::pi / 2)) < 1e-15);
  CHECK(std::abs(u(0, 1)) < 1e-15);

  // -J X with J = 1 leaves |+> invariant up to the phase e^{+it}.
  const ComplexVector plus{kR, kR};
  for (double t : {0.3, 1.0, 2.7, 11.0}) {
    const auto v = adiaprep::apply(expm_minus_i(kX * -1.0, t), plus);
    CHECK(std::abs(inner(plus, v) - std::polar(1.0, t)) < 1e-12);
  }
}

TEST_CASE("expm_minus_i agrees with a Taylor-series exponential") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = oracle::random_hermitian(1 + trial % 5, rng);
    const double t = time(rng);
    CHECK(max_abs_diff(expm_minus_i(m, t), oracle::expm_taylor(m, t)) < 1e-10);
  }
}

TEST_CASE("expm_minus_i group law, unitarity and norm preservation") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> time(-5.0, 5.0);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
    const auto m = oracle::random_hermitian(n, rng);
    const double s = time(rng), t = time(rng);
    const auto us = expm_minus_i(m, s), ut = expm_minus_i(m, t), ust = expm_minus_i(m, s + t);
    CHECK(max_abs_diff(ust, us * ut) < 1e-10);
    CHECK(max_abs_diff(ust.adjoint() * ust, ComplexMatrix::identity(n)) < 1e-10);

    ComplexVector v(n);
    for (auto& z : v) z = {g(rng), g(rng)};
    const double nv = norm(v);
    CHECK(std::abs(norm(adiaprep::apply(ut, v)) - nv) < 1e-12 * nv);
  }
}

TEST_CASE("apply elementary products and dimension checks") {
  const ComplexVector v{0.6, 0.8i};
  const auto same = adiaprep::apply(ComplexMatrix::identity(2), v);
  CHECK(std::abs(same[0] - v[0]) == 0.0);
  CHECK(std::abs(same[1] - v[1]) == 0.0);

  const auto one = adiaprep::apply(kX, ComplexVector{1.0, 0.0});
  CHECK(std::abs(one[0]) == 0.0);
  CHECK(std::abs(one[1] - 1.0) == 0.0);

  const auto plus = adiaprep::apply(kH, ComplexVector{1.0, 0.0});
  CHECK(std::abs(plus[0] - kR) < 1e-16);
  CHECK(std::abs(plus[1] - kR) < 1e-16);

  CHECK_THROWS_AS(adiaprep::apply(kX, ComplexVector{1.0, 0.0, 0.0}), LinalgError);
}

TEST_CASE("kron builds tensor products") {
  const auto zx = kron(kZ, kX);
  CHECK(zx.dim() == 4);
  CHECK(zx(0, 1) == Complex(1.0));
  CHECK(zx(2, 3) == Complex(-1.0));
  CHECK(zx(0, 2) == Complex(0.0));
}

#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "regfm/rng.hpp"
#include "regfm/spectra.hpp"

using namespace regfm;

namespace {

CMatrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  CMatrix G(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) G(i, j) = rng.cgauss();
  return 0.5 * (G + G.adjoint());
}

CMatrix diag_real(std::initializer_list<double> values) {
  CMatrix M = CMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                            static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) M(i, i) = v, ++i;
  return M;
}

RVector rvec(std::initializer_list<double> values) {
  RVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

double spectral_norm_general(const CMatrix& M) {
  return Eigen::JacobiSVD<CMatrix>(M).singularValues()(0);
}

}  // namespace

TEST_CASE("eigendecomposition sorts a diagonal matrix") {
  const auto E = spectra::hermitian_eigendecomposition(diag_real({1.0, 3.0, 2.0}));
  CHECK(E.values(0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(E.values(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(E.values(2) == doctest::Approx(1.0).epsilon(1e-12));
  for (Eigen::Index j = 0; j < 3; ++j) {
    int ones = 0;
    for (Eigen::Index i = 0; i < 3; ++i) {
      const double mag = std::abs(E.vectors(i, j));
      if (mag > 0.5) ++ones;
      CHECK((mag < 1e-10 || mag > 1.0 - 1e-10));
    }
    CHECK(ones == 1);
  }
}

TEST_CASE("eigendecomposition of a 1x1 matrix") {
  CMatrix M(1, 1);
  M(0, 0) = 5.0;
  const auto E = spectra::hermitian_eigendecomposition(M);
  CHECK(E.values(0) == doctest::Approx(5.0));
  CHECK(std::abs(E.vectors(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("eigendecomposition reconstructs and is orthonormal") {
  const CMatrix M = random_hermitian(8, 11);
  const auto E = spectra::hermitian_eigendecomposition(M);
  const CMatrix I = CMatrix::Identity(8, 8);
  CHECK((E.vectors.adjoint() * E.vectors - I).cwiseAbs().maxCoeff() < 1e-10);
  const CMatrix R = E.vectors * E.values.asDiagonal().toDenseMatrix().cast<Complex>() *
                    E.vectors.adjoint();
  CHECK((R - M).cwiseAbs().maxCoeff() < 1e-10);
  for (Eigen::Index i = 0; i + 1 < 8; ++i) CHECK(E.values(i) >= E.values(i + 1));
}

TEST_CASE("eigendecomposition rejects bad inputs") {
  CHECK_THROWS_AS(spectra::hermitian_eigendecomposition(CMatrix::Zero(2, 3)),
                  validation_error);
  CMatrix M(2, 2);
  M << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
  CHECK_THROWS_AS(spectra::hermitian_eigendecomposition(M), validation_error);
}

TEST_CASE("hermitian_abs flips negative eigenvalues") {
  const CMatrix A = spectra::hermitian_abs(diag_real({2.0, -3.0}));
  CHECK(std::abs(A(0, 0) - Complex(2.0, 0.0)) < 1e-12);
  CHECK(std::abs(A(1, 1) - Complex(3.0, 0.0)) < 1e-12);
  CHECK(std::abs(A(0, 1)) < 1e-12);
}

TEST_CASE("hermitian_abs is the identity on PSD input") {
  const CMatrix G = random_hermitian(6, 21);
  const CMatrix M = G * G.adjoint();
  CHECK((spectra::hermitian_abs(M) - M).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("hermitian_abs squares to M^2") {
  const CMatrix M = random_hermitian(8, 31);
  const CMatrix A = spectra::hermitian_abs(M);
  CHECK((A * A - M * M).cwiseAbs().maxCoeff() < 1e-9);
  const auto E = spectra::hermitian_eigendecomposition(A);
  CHECK(E.values(E.values.size() - 1) > -1e-10);
}

TEST_CASE("abs spectrum equals absolute eigenvalues as a multiset") {
  const CMatrix M = random_hermitian(7, 41);
  RVector expected = spectra::hermitian_eigendecomposition(M).values.cwiseAbs();
  std::sort(expected.data(), expected.data() + expected.size(), std::greater<double>());
  const RVector got = spectra::hermitian_eigendecomposition(spectra::hermitian_abs(M)).values;
  CHECK((expected - got).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("augment_sharp fixes Hermitian PSD input") {
  const CMatrix G = random_hermitian(5, 51);
  const CMatrix M = G * G.adjoint();
  CHECK((spectra::augment_sharp(M) - M).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("augment_sharp of a purely imaginary scalar") {
  CMatrix F(1, 1);
  F(0, 0) = Complex(0.0, 1.0);
  const CMatrix S = spectra::augment_sharp(F);
  CHECK(std::abs(S(0, 0) - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("augment_sharp is Hermitian PSD with bounded norm") {
  Rng rng(61);
  CMatrix F(6, 6);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j) F(i, j) = rng.cgauss();
  const CMatrix S = spectra::augment_sharp(F);
  CHECK((S - S.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  const auto E = spectra::hermitian_eigendecomposition(S);
  const double fnorm = spectral_norm_general(F);
  CHECK(E.values(E.values.size() - 1) >= -1e-12 * fnorm);
  CHECK(spectra::spectral_norm_hermitian(S) <= 2.0 * fnorm + 1e-10);
}

TEST_CASE("singular_system clamps tiny eigenvalues") {
  const auto S = spectra::singular_system(diag_real({4.0, 1.0, 1e-20}), 1e-14);
  REQUIRE(S.lambdas.size() == 2);
  CHECK(S.lambdas(0) == doctest::Approx(4.0));
  CHECK(S.lambdas(1) == doctest::Approx(1.0));
  CHECK(S.clamp_threshold == doctest::Approx(4e-14));
}

TEST_CASE("singular_system keeps a flat spectrum") {
  const auto S = spectra::singular_system(CMatrix::Identity(3, 3), 1e-14);
  REQUIRE(S.lambdas.size() == 3);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(S.lambdas(i) == doctest::Approx(1.0));
}

TEST_CASE("singular_system rejects an empty retained spectrum") {
  CHECK_THROWS_AS(spectra::singular_system(CMatrix::Zero(2, 2), 1e-14), numerical_error);
  CHECK_THROWS_AS(spectra::singular_system(CMatrix::Identity(2, 2), -1.0),
                  validation_error);
}

TEST_CASE("spectral_projection selects single and clustered eigenvalues") {
  const auto E3 = spectra::hermitian_eigendecomposition(diag_real({3.0, 2.0, 1.0}));
  const CMatrix P = spectra::spectral_projection(E3, 3.0, 0.5);
  CHECK((P - diag_real({1.0, 0.0, 0.0})).cwiseAbs().maxCoeff() < 1e-12);

  const auto E2 = spectra::hermitian_eigendecomposition(diag_real({2.0, 2.0, 1.0}));
  const CMatrix Q = spectra::spectral_projection(E2, 2.0, 0.5);
  CHECK((Q - diag_real({1.0, 1.0, 0.0})).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("spectral_projection obeys projector algebra") {
  const CMatrix M = random_hermitian(6, 71);
  const auto E = spectra::hermitian_eigendecomposition(M);
  const double gap01 = E.values(0) - E.values(1);
  const CMatrix P = spectra::spectral_projection(E, E.values(0), 0.49 * gap01);
  CHECK((P * P - P).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((P - P.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(spectra::spectral_norm_hermitian(P) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(P.trace() - Complex(1.0, 0.0)) < 1e-10);

  const CMatrix Plow = spectra::spectral_projection(E, E.values(5),
                                                    0.49 * (E.values(4) - E.values(5)));
  CHECK((P * Plow).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("spectral_projection rejects contour hits") {
  const auto E = spectra::hermitian_eigendecomposition(diag_real({3.0, 2.0, 1.0}));
  CHECK_THROWS_AS(spectra::spectral_projection(E, 3.0, 1.0), validation_error);
  CHECK_THROWS_AS(spectra::spectral_projection(E, 3.0, 0.0), validation_error);
}

TEST_CASE("spectrum_distance on matched and shifted spectra") {
  CHECK(spectra::spectrum_distance(rvec({3, 2, 1}), rvec({3, 2, 1})) == 0.0);
  CHECK(spectra::spectrum_distance(rvec({3, 2, 1}), rvec({3.01, 2.0, 0.99})) ==
        doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("spectrum_distance pads the shorter spectrum with zero") {
  CHECK(spectra::spectrum_distance(rvec({3, 2, 1}), rvec({3, 2})) ==
        doctest::Approx(1.0));
}

TEST_CASE("spectrum_distance validates input") {
  CHECK_THROWS_AS(spectra::spectrum_distance(RVector(), rvec({1})), validation_error);
  CHECK_THROWS_AS(spectra::spectrum_distance(rvec({1, 2}), rvec({1})), validation_error);
}

TEST_CASE("weyl stability over random perturbation pairs") {
  for (const double delta : {1e-2, 1e-4}) {
    for (int trial = 0; trial < 200; ++trial) {
      const CMatrix A = random_hermitian(8, 1000 + static_cast<std::uint64_t>(trial));
      CMatrix D = random_hermitian(8, 5000 + static_cast<std::uint64_t>(trial));
      D *= delta / spectra::spectral_norm_hermitian(D);
      const RVector sa = spectra::hermitian_eigendecomposition(A).values;
      const RVector sb = spectra::hermitian_eigendecomposition(A + D).values;
      CHECK(spectra::spectrum_distance(sa, sb) <= delta + 1e-12);
    }
  }
}

TEST_CASE("compute_n_delta worked examples") {
  CHECK(spectra::compute_n_delta(rvec({1.0, 0.5, 0.25, 0.125}), 1e-4) == 1);
  CHECK(spectra::compute_n_delta(rvec({3.0, 2.0, 1.0}), 1e-8) == 3);
  CHECK(spectra::compute_n_delta(rvec({1.0, 0.5}), 1e-3) == 0);
}

TEST_CASE("compute_n_delta domain checks") {
  CHECK_THROWS_AS(spectra::compute_n_delta(rvec({1.0}), 0.3), validation_error);
  CHECK_THROWS_AS(spectra::compute_n_delta(rvec({1.0}), 0.0), validation_error);
  CHECK_THROWS_AS(spectra::compute_n_delta(rvec({1.0, -1.0}), 1e-4), validation_error);
}

TEST_CASE("compute_n_delta is non-increasing in delta") {
  const RVector lam = rvec({3.0, 2.0, 1.0, 0.5, 0.25});
  std::size_t prev = lam.size();
  for (const double delta : {1e-8, 1e-6, 1e-4, 1e-2, 0.2}) {
    const std::size_t n = spectra::compute_n_delta(lam, delta);
    CHECK(n <= prev);
    prev = n;
  }
}

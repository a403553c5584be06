#include "regfm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace regfm::spectra {

namespace {

void require_square(const CMatrix& M, const char* who) {
  if (M.rows() != M.cols())
    throw validation_error(std::string(who) + ": matrix must be square, got " +
                           std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
  if (M.rows() == 0) throw validation_error(std::string(who) + ": matrix is empty");
}

void require_hermitian(const CMatrix& M, const char* who) {
  const double scale = M.cwiseAbs().maxCoeff();
  if (scale == 0.0) return;
  const double dev = (M - M.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermitianTol * scale)
    throw validation_error(std::string(who) + ": matrix is not Hermitian within tolerance");
}

void require_sorted_nonincreasing(const RVector& v, const char* who) {
  for (Eigen::Index i = 0; i + 1 < v.size(); ++i)
    if (v(i) < v(i + 1))
      throw validation_error(std::string(who) + ": values must be sorted non-increasing");
}

/* Distance from value to the nearest distinct other value in a sorted
 * spectrum; +inf when no other distinct value exists. */
double isolation_gap(const RVector& lambdas, Eigen::Index n) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < lambdas.size(); ++j) {
    if (lambdas(j) == lambdas(n)) continue;
    gap = std::min(gap, std::abs(lambdas(j) - lambdas(n)));
  }
  return gap;
}

}  // namespace

HermitianEigensystem hermitian_eigendecomposition(const CMatrix& M) {
  require_square(M, "hermitian_eigendecomposition");
  require_hermitian(M, "hermitian_eigendecomposition");

  const CMatrix H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(H);
  if (solver.info() != Eigen::Success)
    throw numerical_error("hermitian_eigendecomposition: eigensolver did not converge");

  const Eigen::Index n = H.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return solver.eigenvalues()(i) > solver.eigenvalues()(j);
  });

  HermitianEigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

CMatrix hermitian_abs(const CMatrix& M) {
  const HermitianEigensystem E = hermitian_eigendecomposition(M);
  const CMatrix R =
      E.vectors * E.values.cwiseAbs().asDiagonal() * E.vectors.adjoint();
  return 0.5 * (R + R.adjoint());
}

CMatrix augment_sharp(const CMatrix& F) {
  require_square(F, "augment_sharp");
  const CMatrix re = 0.5 * (F + F.adjoint());
  const CMatrix im = (F - F.adjoint()) / Complex(0.0, 2.0);
  return hermitian_abs(re) + hermitian_abs(im);
}

SingularSystem singular_system(const CMatrix& A, double clamp_rel) {
  if (clamp_rel < 0.0)
    throw validation_error("singular_system: clamp_rel must be nonnegative");
  const HermitianEigensystem E = hermitian_eigendecomposition(A);

  const double lambda_max = E.values(0);
  if (E.values(E.values.size() - 1) < -1e-8 * std::max(std::abs(lambda_max), 1.0))
    throw validation_error("singular_system: matrix is not positive semidefinite within tolerance");

  const double threshold = clamp_rel * lambda_max;
  Eigen::Index kept = 0;
  while (kept < E.values.size() && E.values(kept) > threshold && E.values(kept) > 0.0) ++kept;
  if (kept == 0)
    throw numerical_error("singular_system: all eigenvalues clamped, spectrum is empty");

  SingularSystem S;
  S.lambdas = E.values.head(kept);
  S.vectors = E.vectors.leftCols(kept);
  S.clamp_threshold = threshold;
  return S;
}

CMatrix spectral_projection(const HermitianEigensystem& E, double cluster_center,
                            double rho_half) {
  if (!(rho_half > 0.0))
    throw validation_error("spectral_projection: rho_half must be positive");
  for (Eigen::Index i = 0; i < E.values.size(); ++i) {
    const double dist = std::abs(E.values(i) - cluster_center);
    if (std::abs(dist - rho_half) <= 1e-12)
      throw validation_error("spectral_projection: eigenvalue lies on the cluster contour");
  }

  const Eigen::Index n = E.vectors.rows();
  CMatrix P = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < E.values.size(); ++i)
    if (std::abs(E.values(i) - cluster_center) < rho_half)
      P += E.vectors.col(i) * E.vectors.col(i).adjoint();
  return P;
}

double spectrum_distance(const RVector& a, const RVector& b) {
  if (a.size() == 0 || b.size() == 0)
    throw validation_error("spectrum_distance: spectra must be non-empty");
  if (a.size() == 0 || b.size() == 0)
    throw validation_error("spectrum_distance: spectra must be non-empty");
  require_sorted_nonincreasing(a, "spectrum_distance");
  require_sorted_nonincreasing(b, "spectrum_distance");

  const Eigen::Index n = std::max(a.size(), b.size());
  RVector pa = RVector::Zero(n);
  RVector pb = RVector::Zero(n);
  pa.head(a.size()) = a;
  pb.head(b.size()) = b;

  auto directed = [n](const RVector& from, const RVector& to) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j)
        best = std::min(best, std::abs(from(i) - to(j)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(pa, pb), directed(pb, pa));
}

std::size_t compute_n_delta(const RVector& lambdas, double delta) {
  if (!(delta > 0.0 && delta < 0.25))
    throw validation_error("compute_n_delta: delta must lie in (0, 1/4)");
  require_sorted_nonincreasing(lambdas, "compute_n_delta");
  for (Eigen::Index i = 0; i < lambdas.size(); ++i)
    if (!(lambdas(i) > 0.0))
      throw validation_error("compute_n_delta: spectrum must be strictly positive");

  const double gap_needed = 2.0 * std::sqrt(delta);
  const double quarter_root = std::pow(delta, 0.25);
  std::size_t best = 0;
  for (Eigen::Index n = 0; n < lambdas.size(); ++n) {
    if (8.0 * double(n + 1) * quarter_root > 1.0) break;
    if (isolation_gap(lambdas, n) >= gap_needed) best = static_cast<std::size_t>(n + 1);
  }
  return best;
}

double spectral_norm_hermitian(const CMatrix& M) {
  const HermitianEigensystem E = hermitian_eigendecomposition(M);
  return std::max(std::abs(E.values(0)), std::abs(E.values(E.values.size() - 1)));
}

}  // namespace regfm::spectra

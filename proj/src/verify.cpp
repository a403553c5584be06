#include "regfm/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "regfm/rng.hpp"
#include "regfm/spectra.hpp"

namespace regfm::verify {

namespace {

constexpr double kSlack = 1e-10;

void require_hermitian_square(const CMatrix& M, const char* who) {
  if (M.rows() != M.cols())
    throw validation_error(std::string(who) + ": matrix must be square");
  const double scale = std::max(M.cwiseAbs().maxCoeff(), 1.0);
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
    throw validation_error(std::string(who) + ": matrix must be hermitian");
}

CMatrix random_gaussian(Eigen::Index dim, Rng& rng) {
  CMatrix G(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) G(i, j) = rng.cgauss();
  return G;
}

double isolation_gap(const RVector& lambdas, Eigen::Index n) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < lambdas.size(); ++j) {
    if (lambdas(j) == lambdas(n)) continue;
    gap = std::min(gap, std::abs(lambdas(j) - lambdas(n)));
  }
  return gap;
}

void append(BoundReport& r, const std::string& key, double value) {
  r.metadata.emplace_back(key, format_full(value));
}

}  // namespace

std::string report_line(const BoundReport& r) {
  std::string line = r.bound_name;
  line += ' ';
  line += format_full(r.lhs);
  line += ' ';
  line += format_full(r.rhs);
  line += ' ';
  line += r.satisfied ? "true" : "false";
  if (r.skipped) line += " skipped=true";
  for (const auto& [key, value] : r.metadata) {
    line += ' ';
    line += key;
    line += '=';
    line += value;
  }
  return line;
}

CMatrix random_psd(std::size_t dim, std::uint64_t seed, double decay) {
  if (dim < 1) throw validation_error("random_psd: dim must be at least 1");
  if (!(decay > 0.0 && decay < 1.0))
    throw validation_error("random_psd: decay must lie in (0, 1)");

  const Eigen::Index n = static_cast<Eigen::Index>(dim);
  Rng rng(seed);
  const CMatrix G = random_gaussian(n, rng);

  Eigen::HouseholderQR<CMatrix> qr(G);
  CMatrix Q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(R(j, j));
    if (mag > 0.0) Q.col(j) *= R(j, j) / mag;
  }

  CVector lambdas(n);
  double value = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    lambdas(i) = value;
    value *= decay;
  }
  const CMatrix A = Q * lambdas.asDiagonal() * Q.adjoint();
  return 0.5 * (A + A.adjoint());
}

CMatrix perturb_operator(const CMatrix& A, double delta, std::uint64_t seed) {
  require_hermitian_square(A, "perturb_operator");
  if (!(delta >= 0.0))
    throw validation_error("perturb_operator: delta must be nonnegative");
  if (delta == 0.0) return A;

  const Eigen::Index n = A.rows();
  Rng rng(seed);
  const CMatrix G = random_gaussian(n, rng);
  CMatrix P = 0.5 * (G + G.adjoint());
  const double pnorm = spectra::spectral_norm_hermitian(P);
  if (pnorm > 0.0) P *= 0.5 / pnorm;

  const double mu = rng.uniform(0.5, 1.0);
  CMatrix step = P + mu * CMatrix::Identity(n, n);
  const double snorm = spectra::spectral_norm_hermitian(step);
  if (!(snorm > 0.0)) throw numerical_error("perturb_operator: degenerate perturbation");
  step *= delta / snorm;
  return A + step;
}

BoundReport check_weyl(const CMatrix& A, const CMatrix& A_delta) {
  require_hermitian_square(A, "check_weyl");
  require_hermitian_square(A_delta, "check_weyl");
  if (A.rows() != A_delta.rows())
    throw validation_error("check_weyl: dimension mismatch");

  const RVector sa = spectra::hermitian_eigendecomposition(A).values;
  const RVector sb = spectra::hermitian_eigendecomposition(A_delta).values;

  BoundReport r;
  r.bound_name = "weyl";
  r.lhs = spectra::spectrum_distance(sa, sb);
  r.rhs = spectra::spectral_norm_hermitian(A - A_delta);
  r.satisfied = r.lhs <= r.rhs + kSlack;
  append(r, "delta", r.rhs);
  return r;
}

BoundReport check_projection_bound(const CMatrix& A, const CMatrix& A_delta,
                                   std::size_t n) {
  require_hermitian_square(A, "check_projection_bound");
  require_hermitian_square(A_delta, "check_projection_bound");
  if (A.rows() != A_delta.rows())
    throw validation_error("check_projection_bound: dimension mismatch");
  if (n < 1 || static_cast<Eigen::Index>(n) > A.rows())
    throw validation_error("check_projection_bound: eigenvalue index out of range");

  const double delta = spectra::spectral_norm_hermitian(A - A_delta);
  BoundReport r;
  r.bound_name = "projection";
  append(r, "delta", delta);
  r.metadata.emplace_back("n", std::to_string(n));
  if (delta == 0.0) {
    r.satisfied = true;
    return r;
  }
  if (!(delta < 0.25))
    throw validation_error("check_projection_bound: delta must be below 1/4");

  const spectra::HermitianEigensystem ea = spectra::hermitian_eigendecomposition(A);
  const Eigen::Index idx = static_cast<Eigen::Index>(n) - 1;
  const double center = ea.values(idx);
  const double gap = isolation_gap(ea.values, idx);
  const double rho_half = std::sqrt(delta);
  append(r, "gap", gap);
  if (!(gap >= 2.0 * rho_half)) {
    r.skipped = true;
    r.satisfied = true;
    return r;
  }

  const spectra::HermitianEigensystem eb = spectra::hermitian_eigendecomposition(A_delta);
  const CMatrix P = spectra::spectral_projection(ea, center, rho_half);
  const CMatrix Pd = spectra::spectral_projection(eb, center, rho_half);
  r.lhs = spectra::spectral_norm_hermitian(P - Pd);
  r.rhs = 2.0 * rho_half;
  r.satisfied = r.lhs <= r.rhs + kSlack;
  return r;
}

BoundReport check_pconv_sum(const CMatrix& A, const CMatrix& A_delta,
                            const CVector& ell) {
  require_hermitian_square(A, "check_pconv_sum");
  require_hermitian_square(A_delta, "check_pconv_sum");
  if (A.rows() != A_delta.rows())
    throw validation_error("check_pconv_sum: dimension mismatch");
  if (ell.size() != A.rows())
    throw validation_error("check_pconv_sum: vector length does not match the matrix");

  const double delta = spectra::spectral_norm_hermitian(A - A_delta);
  BoundReport r;
  r.bound_name = "pconv";
  append(r, "delta", delta);
  if (delta == 0.0) {
    r.satisfied = true;
    r.metadata.emplace_back("n", "0");
    return r;
  }
  if (!(delta < 0.25))
    throw validation_error("check_pconv_sum: delta must be below 1/4");

  const spectra::HermitianEigensystem ea = spectra::hermitian_eigendecomposition(A);
  const spectra::HermitianEigensystem eb = spectra::hermitian_eigendecomposition(A_delta);

  Eigen::Index positive = 0;
  while (positive < ea.values.size() && ea.values(positive) > 0.0) ++positive;
  const std::size_t trunc =
      positive == 0 ? 0 : spectra::compute_n_delta(ea.values.head(positive), delta);

  double signed_sum = 0.0;
  double abs_sum = 0.0;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(trunc); ++i) {
    const double perturbed = std::norm(inner(eb.vectors.col(i), ell));
    const double unperturbed = std::norm(inner(ea.vectors.col(i), ell));
    signed_sum += perturbed - unperturbed;
    abs_sum += std::abs(perturbed - unperturbed);
  }
  r.lhs = signed_sum;
  r.rhs = std::pow(delta, 0.25) * ell.squaredNorm();
  r.satisfied = r.lhs <= r.rhs + kSlack;
  r.metadata.emplace_back("n", std::to_string(trunc));
  append(r, "abs_sum", abs_sum);
  return r;
}

}  // namespace regfm::verify

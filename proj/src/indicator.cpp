#include "regfm/indicator.hpp"

#include <cmath>
#include <string>

namespace regfm::indicator {

namespace {

void require_compatible(const spectra::SingularSystem& S, const CVector& ell,
                        const char* who) {
  if (ell.size() != S.vectors.rows())
    throw validation_error(std::string(who) + ": vector length does not match the system");
  if (S.lambdas.size() != S.vectors.cols())
    throw validation_error(std::string(who) + ": inconsistent singular system");
}

}  // namespace

PicardReport picard_sum(const spectra::SingularSystem& S, const CVector& ell,
                        std::size_t truncation) {
  require_compatible(S, ell, "picard_sum");
  if (truncation > static_cast<std::size_t>(S.lambdas.size()))
    throw validation_error("picard_sum: truncation exceeds the number of retained modes");

  PicardReport report;
  report.truncation = truncation;
  report.partial_sums.reserve(truncation);
  double acc = 0.0;
  for (std::size_t n = 0; n < truncation; ++n) {
    const Eigen::Index i = static_cast<Eigen::Index>(n);
    if (!(S.lambdas(i) > 0.0))
      throw numerical_error("picard_sum: nonpositive eigenvalue in the retained spectrum");
    acc += std::norm(inner(S.vectors.col(i), ell)) / S.lambdas(i);
    report.partial_sums.push_back(acc);
  }
  return report;
}

CVector regularized_solution_coeffs(const spectra::SingularSystem& S, const CVector& ell,
                                    const filters::FilterSpec& f) {
  require_compatible(S, ell, "regularized_solution_coeffs");
  if (S.lambdas.size() == 0)
    throw validation_error("regularized_solution_coeffs: empty singular system");

  const filters::FilterSpec spec = filters::resolve_beta(f, S.lambdas(0));
  CVector coeffs(S.lambdas.size());
  for (Eigen::Index n = 0; n < S.lambdas.size(); ++n) {
    if (!(S.lambdas(n) > 0.0))
      throw numerical_error("regularized_solution_coeffs: nonpositive eigenvalue");
    const double phi = filters::filter_value(spec, S.lambdas(n));
    coeffs(n) = phi / S.lambdas(n) * S.vectors.col(n).dot(ell);
  }
  return coeffs;
}

CVector assemble_solution(const spectra::SingularSystem& S, const CVector& coeffs) {
  if (coeffs.size() != S.vectors.cols())
    throw validation_error("assemble_solution: coefficient count does not match the system");
  return S.vectors * coeffs;
}

double quadratic_indicator(const spectra::SingularSystem& S, const CVector& ell,
                           const filters::FilterSpec& f) {
  require_compatible(S, ell, "quadratic_indicator");
  if (S.lambdas.size() == 0)
    throw validation_error("quadratic_indicator: empty singular system");

  const filters::FilterSpec spec = filters::resolve_beta(f, S.lambdas(0));
  double acc = 0.0;
  for (Eigen::Index n = 0; n < S.lambdas.size(); ++n) {
    if (!(S.lambdas(n) > 0.0))
      throw numerical_error("quadratic_indicator: nonpositive eigenvalue");
    const double phi = filters::filter_value(spec, S.lambdas(n));
    acc += phi * phi / S.lambdas(n) * std::norm(inner(S.vectors.col(n), ell));
  }
  return acc;
}

double glsm_functional(const CMatrix& A, const CVector& x, const CVector& ell,
                       double alpha) {
  if (!(alpha > 0.0)) throw validation_error("glsm_functional: alpha must be positive");
  if (A.rows() != A.cols()) throw validation_error("glsm_functional: matrix must be square");
  if (x.size() != A.cols() || ell.size() != A.rows())
    throw validation_error("glsm_functional: vector length does not match the matrix");
  const double scale = A.cwiseAbs().maxCoeff();
  if ((A - A.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * std::max(scale, 1.0))
    throw validation_error("glsm_functional: matrix must be hermitian");

  const CVector Ax = A * x;
  return alpha * std::real(Ax.dot(x)) + (Ax - ell).squaredNorm();
}

}  // namespace regfm::indicator

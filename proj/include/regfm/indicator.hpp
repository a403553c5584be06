#pragma once

#include <cstddef>
#include <vector>

#include "regfm/filters.hpp"
#include "regfm/spectra.hpp"
#include "regfm/types.hpp"

namespace regfm::indicator {

/* Partial sums of the Picard series sum_n |(x_n, ell)|^2 / lambda_n;
 * partial_sums[i] holds the sum of the first i+1 terms. */
struct PicardReport {
  std::vector<double> partial_sums;
  std::size_t truncation = 0;
};

PicardReport picard_sum(const spectra::SingularSystem& S, const CVector& ell,
                        std::size_t truncation);

/* Per-mode coefficients c_n = phi(lambda_n)/lambda_n * conj((x_n, ell)) of the
 * regularized solution; the solution vector is sum_n c_n x_n. */
CVector regularized_solution_coeffs(const spectra::SingularSystem& S, const CVector& ell,
                                    const filters::FilterSpec& f);

/* sum_n c_n x_n for coefficients aligned with the retained modes. */
CVector assemble_solution(const spectra::SingularSystem& S, const CVector& coeffs);

/* sum_n phi^2(lambda_n)/lambda_n |(x_n, ell)|^2, the quadratic form
 * (x_reg, A x_reg) of the regularized solution.  Equals the final Picard
 * partial sum under the identity filter. */
double quadratic_indicator(const spectra::SingularSystem& S, const CVector& ell,
                           const filters::FilterSpec& f);

/* J_alpha(x; ell) = alpha (x, Ax) + ||Ax - ell||^2 for Hermitian PSD A. */
double glsm_functional(const CMatrix& A, const CVector& x, const CVector& ell,
                       double alpha);

}  // namespace regfm::indicator

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "regfm/types.hpp"

namespace regfm::verify {

/* One checked instance of a spectral stability bound.  satisfied means
 * lhs <= rhs + 1e-10; skipped marks instances whose gap precondition failed
 * (those carry lhs = rhs = 0 and count as satisfied). */
struct BoundReport {
  std::string bound_name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  bool skipped = false;
  std::vector<std::pair<std::string, std::string>> metadata;
};

/* Line format: `bound_name lhs rhs satisfied key=value ...`. */
std::string report_line(const BoundReport& r);

/* Hermitian PSD test operator with eigenvalues decay^(n-1), n = 1..dim, and a
 * Haar-like random eigenbasis (phase-fixed QR of a complex Gaussian matrix).
 * Deterministic per seed. */
CMatrix random_psd(std::size_t dim, std::uint64_t seed, double decay);

/* A + Delta with Delta Hermitian positive definite and ||Delta||_2 = delta
 * exactly (a random Hermitian P with ||P||_2 = 1/2 shifted by mu in (1/2, 1)
 * and rescaled), so the perturbed operator stays PSD.  delta = 0 returns A
 * unchanged. */
CMatrix perturb_operator(const CMatrix& A, double delta, std::uint64_t seed);

/* Spectrum stability: Hausdorff distance of the spectra vs ||A - A_delta||_2. */
BoundReport check_weyl(const CMatrix& A, const CMatrix& A_delta);

/* Projection stability around the n-th eigenvalue (1-based) of A:
 * ||P_n - P_n^delta||_2 <= 2 sqrt(delta), projections taken with radius
 * sqrt(delta).  Skipped when lambda_n is not isolated by 2 sqrt(delta). */
BoundReport check_projection_bound(const CMatrix& A, const CMatrix& A_delta,
                                   std::size_t n);

/* Eigenvector stability sum over n = 1..N(delta):
 * sum [ |(x_n^delta, ell)|^2 - |(x_n, ell)|^2 ] <= delta^(1/4) ||ell||^2.
 * The signed sum is bound-checked; the sum of absolute differences is
 * reported as metadata. */
BoundReport check_pconv_sum(const CMatrix& A, const CMatrix& A_delta,
                            const CVector& ell);

}  // namespace regfm::verify

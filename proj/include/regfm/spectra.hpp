#pragma once

#include <cstddef>

#include "regfm/types.hpp"

namespace regfm::spectra {

/* Eigensystem of a Hermitian matrix, eigenvalues sorted non-increasing with
 * eigenvector columns aligned. */
struct HermitianEigensystem {
  RVector values;
  CMatrix vectors;
};

/* Positive part of the spectrum of a Hermitian PSD operator, clamped at
 * clamp_threshold (absolute).  Lambdas are strictly positive and
 * non-increasing; vectors are the matching orthonormal eigenvectors. */
struct SingularSystem {
  RVector lambdas;
  CMatrix vectors;
  double clamp_threshold = 0.0;
};

/* Decompose a Hermitian matrix.  The input is symmetrized as (M + M*)/2;
 * inputs that deviate from Hermitian by more than a small relative tolerance
 * are rejected. */
HermitianEigensystem hermitian_eigendecomposition(const CMatrix& M);

/* Operator absolute value V |Lambda| V*. */
CMatrix hermitian_abs(const CMatrix& M);

/* |Re F| + |Im F| with Re F = (F + F*)/2 and Im F = (F - F*)/(2i); Hermitian
 * positive semidefinite up to rounding. */
CMatrix augment_sharp(const CMatrix& F);

/* Eigenpairs of a Hermitian PSD matrix with every eigenvalue
 * <= clamp_rel * lambda_max discarded.  Throws if nothing survives. */
SingularSystem singular_system(const CMatrix& A, double clamp_rel);

/* Orthogonal projection onto the span of eigenvectors whose eigenvalue lies
 * strictly inside the ball |lambda - cluster_center| < rho_half.  Rejects
 * inputs with an eigenvalue on the ball boundary (within 1e-12). */
CMatrix spectral_projection(const HermitianEigensystem& E, double cluster_center,
                            double rho_half);

/* Hausdorff distance between two finite spectra, the shorter padded with 0
 * (compact-operator spectra accumulate at 0).  Inputs must be sorted
 * non-increasing. */
double spectrum_distance(const RVector& a, const RVector& b);

/* Stability index: the largest n such that lambda_n is isolated from the rest
 * of the (distinct-value) spectrum by at least 2*sqrt(delta) while
 * 8*n*delta^(1/4) <= 1; 0 when no index qualifies.  Requires
 * delta in (0, 1/4). */
std::size_t compute_n_delta(const RVector& lambdas, double delta);

/* max |eigenvalue| of a Hermitian matrix. */
double spectral_norm_hermitian(const CMatrix& M);

}  // namespace regfm::spectra

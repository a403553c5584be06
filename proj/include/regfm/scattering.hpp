#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "regfm/types.hpp"

namespace regfm::scattering {

/* Star-shaped boundary r(theta) = c0 + sum_k (a_k cos k theta + b_k sin k theta),
 * required positive everywhere. */
struct ScattererGeometry {
  double c0 = 0.5;
  std::vector<double> a;  // a[k-1] multiplies cos(k theta)
  std::vector<double> b;  // b[k-1] multiplies sin(k theta)

  double radius(double theta) const;
  double radius_derivative(double theta) const;
};

/* r(theta) = 0.5 (1 - 0.3 sin 4 theta). */
ScattererGeometry star_preset();
ScattererGeometry disk_preset(double R);

/* r > 0 checked by dense sampling (4096 points). */
void validate_geometry(const ScattererGeometry& g);

struct Medium {
  Complex n{4.0, 2.0};
  Complex eta{2.0, 1.0};
};

/* Im(n) >= 0 and Im(eta) >= 0. */
void validate_medium(const Medium& m);

struct WaveConfig {
  double k = 1.0;
  std::size_t num_directions = 64;

  /* Unit direction at angle 2 pi i / num_directions. */
  Eigen::Vector2d direction(std::size_t i) const;
};

void validate_wave(const WaveConfig& w);

/* Tensor rule for the polar volume integral and the boundary integral:
 * Gauss-Legendre radially on the reference interval [0, 1] (rescaled to
 * [0, r(theta)] per angle), periodic trapezoid angularly. */
struct QuadratureRule {
  std::size_t radial_points = 32;
  std::size_t angular_points = 64;
  RVector radial_nodes;
  RVector radial_weights;
  RVector angular_nodes;
  double angular_weight = 0.0;
};

QuadratureRule make_quadrature(std::size_t radial_points, std::size_t angular_points);

/* Gauss-Legendre nodes and weights on [a, b], exact through degree 2n - 1. */
std::pair<RVector, RVector> gauss_legendre(std::size_t npts, double a, double b);

struct BoundaryPoint {
  Eigen::Vector2d point;
  double jacobian;  // arc-length element sqrt(r^2 + r'^2)
};

BoundaryPoint boundary_point(const ScattererGeometry& g, double theta);

/* Weak-scattering far-field sample
 *   k^2 (n - 1) \int_D e^{-ik w.(xhat - yhat)} dw
 *   + eta \int_{dD} e^{-ik w.(xhat - yhat)} ds(w)
 * for unit incident/observation directions yhat, xhat. */
Complex born_farfield_entry(const ScattererGeometry& g, const Medium& m, double k,
                            const Eigen::Vector2d& xhat, const Eigen::Vector2d& yhat,
                            const QuadratureRule& q);

/* Closed form of the same entry for a disk of radius R:
 *   k^2 (n - 1) 2 pi R J1(kR|d|) / (k|d|) + eta 2 pi R J0(kR|d|),
 * d = xhat - yhat, with the d = 0 limit k^2 (n-1) pi R^2 + eta 2 pi R.
 * Independent validation oracle for the quadrature. */
Complex disk_farfield_reference(double R, const Medium& m, double k,
                                const Eigen::Vector2d& xhat, const Eigen::Vector2d& yhat);

/* N x N matrix of far-field samples over all direction pairs. */
CMatrix assemble_farfield(const ScattererGeometry& g, const Medium& m,
                          const WaveConfig& w, const QuadratureRule& q);

/* Entrywise multiplicative noise F_ij (1 + delta E_ij); E has re/im parts
 * i.i.d. uniform on (-1, 1), rescaled to unit spectral norm (unit Frobenius
 * norm when frobenius is set). */
CMatrix add_noise(const CMatrix& F, double delta, std::uint64_t seed,
                  bool frobenius = false);

/* Range-test vector ell_z with components e^{-ik xhat_i . z}. */
CVector rhs_vector(const Eigen::Vector2d& z, double k, const WaveConfig& w);

}  // namespace regfm::scattering

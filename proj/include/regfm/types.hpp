#pragma once

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace regfm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/* Error taxonomy; the CLI maps these to exit codes 1 / 2 / 3. */
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct validation_error : error {
  using error::error;
};
struct numerical_error : error {
  using error::error;
};
struct io_error : error {
  using error::error;
};

/* Relative tolerance for "Hermitian within tolerance" preconditions. */
inline constexpr double kHermitianTol = 1e-10;

/* Inner product convention used throughout: (u, v) = sum_i u_i * conj(v_i),
 * conjugate-linear in the second slot.  Eigen's dot() conjugates its first
 * argument, hence the swap. */
inline Complex inner(const CVector& u, const CVector& v) { return v.dot(u); }

/* Shortest decimal form that round-trips a double exactly. */
inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace regfm

#pragma once

#include <string_view>

#include "regfm/types.hpp"

namespace regfm::filters {

enum class FilterKind { Tikhonov, Landweber, GLSM, Identity };

const char* kind_name(FilterKind k);
FilterKind kind_from_name(std::string_view name);

/* A spectral filter phi_alpha.  For Landweber, m = ceil(1/alpha) is the
 * iteration count and beta <= 0 means "resolve to 1/(2*lambda_max^2) against
 * the operator the filter is applied to"; filter_value itself requires an
 * explicit positive beta. */
struct FilterSpec {
  FilterKind kind = FilterKind::Identity;
  double alpha = 1.0;
  double beta = 0.0;
  long long m = 1;
};

FilterSpec tikhonov(double alpha);
FilterSpec landweber(double alpha, double beta = 0.0);
FilterSpec glsm(double alpha);
FilterSpec identity();

/* Fill in an auto (non-positive) Landweber beta from the largest spectrum
 * value; returns other specs unchanged. */
FilterSpec resolve_beta(const FilterSpec& spec, double lambda_max);

/* Exponent p in (0, 1/4) of the analytical parameter rule, plus the operator
 * norm ||F_sharp||_2 the Landweber rule depends on. */
struct ParamRule {
  double p = 0.125;
  double operator_norm = 0.0;
};

/* phi_alpha(t):
 *   Tikhonov   t^2 / (t^2 + alpha)
 *   Landweber  1 - (1 - beta t^2)^m          (requires beta t^2 < 1)
 *   GLSM       t / (alpha + t)
 *   Identity   1 for t > 0, 0 at t = 0       (the unregularized mode)      */
double filter_value(const FilterSpec& spec, double t);

/* The bounds phi <= c_reg and phi <= c_alpha * t.  c_reg = 1 for every kind;
 * c_alpha is 1/(2 sqrt(alpha)) for Tikhonov and 1/alpha for GLSM.  For
 * Landweber, sqrt(beta * m): phi <= min(1, beta m t^2) <= sqrt(beta m) t holds
 * for the actual iteration count m = ceil(1/alpha), and reduces to the
 * textbook sqrt(beta/alpha) whenever 1/alpha is an integer (the ceiling makes
 * sqrt(beta/alpha) itself unsound for large alpha).  Identity has no such
 * constants and is rejected. */
struct FilterConstants {
  double c_reg;
  double c_alpha;
};
FilterConstants filter_constants(const FilterSpec& spec);

/* Analytical parameter rule alpha(delta), delta in (0, 1):
 *   Tikhonov   (1/4) delta^(1/4 - p)
 *   Landweber  delta^(1/4 - p) / (2 ||F_sharp||_2^2)
 *   GLSM       delta^((1/4 - p)/2)                                          */
double select_alpha(FilterKind kind, double delta, const ParamRule& rule);

/* ceil(1/alpha), at least 1. */
long long landweber_iterations(double alpha);

}  // namespace regfm::filters

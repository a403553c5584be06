#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "regfm/imaging.hpp"
#include "regfm/types.hpp"

namespace regfm::io {

/* Flat pipeline configuration.  Defaults are the reference scenario: star
 * scatterer, n = 4 + 2i, eta = 2 + i, k = 1, 64 directions, 32 x 64
 * quadrature, [-1, 1]^2 grid at 128 x 128. */
struct RunConfig {
  std::string geometry_preset = "star";  // star | disk | custom
  std::vector<double> geometry_coeffs;   // custom: c0 a1 b1 a2 b2 ...
  double geometry_radius = 0.5;          // disk preset radius

  double n_re = 4.0, n_im = 2.0;
  double eta_re = 2.0, eta_im = 1.0;

  double k = 1.0;
  std::size_t directions = 64;

  std::size_t quad_radial = 32;
  std::size_t quad_angular = 64;

  double noise_delta = 0.0;
  std::uint64_t noise_seed = 1;
  std::string noise_norm = "spectral";  // spectral | frobenius

  std::string filter_kind = "identity";
  double filter_alpha = 1e-5;
  double filter_beta = 0.0;  // landweber; non-positive = auto
  double filter_p = 0.125;
  bool filter_auto = false;  // derive alpha from noise.delta via the parameter rule

  double grid_x_min = -1.0, grid_x_max = 1.0;
  double grid_y_min = -1.0, grid_y_max = 1.0;
  std::size_t grid_nx = 128, grid_ny = 128;

  double clamp_rel = 1e-14;
  double threshold = 0.5;

  std::string output_prefix = "out";

  std::vector<std::size_t> verify_dims = {8, 32};
  std::vector<double> verify_deltas = {1e-2, 1e-4};
  std::size_t verify_trials = 200;
  double verify_decay = 0.5;
};

/* Parse `key = value` lines ('#' starts a comment).  Unknown keys, malformed
 * values, and constraint violations are rejected with the line number. */
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/* Full key dump; parse(dump(c)) == c. */
std::string dump_config(const RunConfig& c);

/* Helpers wiring a config to the module types. */
scattering::ScattererGeometry geometry_from(const RunConfig& c);
scattering::Medium medium_from(const RunConfig& c);
scattering::WaveConfig wave_from(const RunConfig& c);
scattering::QuadratureRule quadrature_from(const RunConfig& c);
imaging::SamplingGrid grid_from(const RunConfig& c);

/* Text matrix format: header `complex-matrix rows cols`, then one line per
 * row of `re:im` entries separated by spaces, 17 significant digits.
 * read(write(M)) round-trips bit-exactly for finite doubles. */
void write_matrix(const CMatrix& M, const std::string& path);
CMatrix read_matrix(const std::string& path);

/* CSV `x,y,w` in row-major grid order, 17 significant digits, preceded by
 * `#`-prefixed metadata comments (filter, alpha, delta, seed, k). */
void write_field_csv(const imaging::IndicatorField& fld, const std::string& path);

/* Binary PGM (P5, maxval 255) of a normalized field; pixel = round(255 v),
 * rows top-to-bottom from y_max down to y_min. */
void write_pgm(const imaging::IndicatorField& fld, const std::string& path);

/* write-temp-then-rename */
void atomic_write(const std::string& path, const std::string& bytes);

}  // namespace regfm::io

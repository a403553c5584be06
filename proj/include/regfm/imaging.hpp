#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "regfm/filters.hpp"
#include "regfm/scattering.hpp"
#include "regfm/types.hpp"

namespace regfm::imaging {

/* Tensor lattice of nx * ny sampling points including the endpoints. */
struct SamplingGrid {
  double x_min = -1.0, x_max = 1.0;
  double y_min = -1.0, y_max = 1.0;
  std::size_t nx = 128, ny = 128;

  double x(std::size_t ix) const { return x_min + (x_max - x_min) * double(ix) / double(nx - 1); }
  double y(std::size_t iy) const { return y_min + (y_max - y_min) * double(iy) / double(ny - 1); }
  std::size_t size() const { return nx * ny; }
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
};

void validate_grid(const SamplingGrid& g);

/* Provenance carried alongside a field for reproducibility. */
struct FieldMeta {
  std::string filter = "identity";
  double alpha = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  double k = 1.0;
};

struct IndicatorField {
  SamplingGrid grid;
  RVector values;  // laid out per SamplingGrid::index
  FieldMeta meta;
};

/* Cap applied where the indicator sum vanishes (grid point orthogonal to all
 * retained modes). */
inline constexpr double kFieldCap = 1e300;

/* The imaging functional over the grid:
 *   W(z) = [ sum_j phi^2(lambda_j)/lambda_j |(x_j, ell_z)|^2 ]^(-1)
 * with {lambda_j; x_j} the clamped spectrum of |Re F| + |Im F|.  An auto
 * Landweber beta resolves to 1/(2 lambda_max^2) here. */
IndicatorField reconstruct(const CMatrix& F_input, const filters::FilterSpec& f,
                           const scattering::WaveConfig& w, const SamplingGrid& grid,
                           double clamp_rel);

/* Divide by the maximum; the result peaks at exactly 1. */
IndicatorField normalize_field(const IndicatorField& fld);

/* mask[p] = (values[p] >= level) on a normalized field, level in (0, 1). */
std::vector<bool> threshold_mask(const IndicatorField& fld, double level);

/* Grid points inside the scatterer: |z| <= r(atan2(z_y, z_x)). */
std::vector<bool> inside_mask(const scattering::ScattererGeometry& g,
                              const SamplingGrid& grid);

/* Intersection over union of the mask against the true interior; 1 when both
 * sets are empty. */
double jaccard(const std::vector<bool>& mask, const scattering::ScattererGeometry& g,
               const SamplingGrid& grid);

}  // namespace regfm::imaging

#include "regfm/imaging.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "regfm/indicator.hpp"
#include "regfm/spectra.hpp"

namespace regfm::imaging {

void validate_grid(const SamplingGrid& g) {
  if (g.nx < 2 || g.ny < 2)
    throw validation_error("grid: need at least 2 points per axis");
  if (!(g.x_min < g.x_max) || !(g.y_min < g.y_max))
    throw validation_error("grid: extents must satisfy min < max");
}

IndicatorField reconstruct(const CMatrix& F_input, const filters::FilterSpec& f,
                           const scattering::WaveConfig& w, const SamplingGrid& grid,
                           double clamp_rel) {
  if (F_input.rows() != F_input.cols())
    throw validation_error("reconstruct: far-field matrix must be square");
  if (F_input.rows() != static_cast<Eigen::Index>(w.num_directions))
    throw validation_error("reconstruct: matrix size does not match the direction count");
  scattering::validate_wave(w);
  validate_grid(grid);

  const CMatrix sharp = spectra::augment_sharp(F_input);
  const spectra::SingularSystem sys = spectra::singular_system(sharp, clamp_rel);
  const filters::FilterSpec ff = filters::resolve_beta(f, sys.lambdas(0));

  const Eigen::Index modes = sys.lambdas.size();
  RVector mode_weight(modes);
  for (Eigen::Index j = 0; j < modes; ++j) {
    const double phi = filters::filter_value(ff, sys.lambdas(j));
    mode_weight(j) = phi * phi / sys.lambdas(j);
  }

  /* L(p, i) = e^{-ik xhat_i . z_p}; row p of conj(L) * vectors holds the
   * inner products (x_j, ell_{z_p}) for all modes j. */
  const Eigen::Index npts = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index ndir = static_cast<Eigen::Index>(w.num_directions);
  CMatrix L(npts, ndir);
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const Eigen::Index p = static_cast<Eigen::Index>(grid.index(ix, iy));
      const Eigen::Vector2d z(grid.x(ix), grid.y(iy));
      for (Eigen::Index i = 0; i < ndir; ++i)
        L(p, i) = std::polar(1.0, -w.k * w.direction(static_cast<std::size_t>(i)).dot(z));
    }
  }
  const CMatrix G = L.conjugate() * sys.vectors;

  IndicatorField out;
  out.grid = grid;
  out.values.resize(npts);
  for (Eigen::Index p = 0; p < npts; ++p) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < modes; ++j) sum += mode_weight(j) * std::norm(G(p, j));
    out.values(p) = sum < 1e-300 ? kFieldCap : std::min(1.0 / sum, kFieldCap);
  }
  out.meta.filter = filters::kind_name(ff.kind);
  out.meta.alpha = ff.kind == filters::FilterKind::Identity ? 0.0 : ff.alpha;
  out.meta.k = w.k;
  return out;
}

IndicatorField normalize_field(const IndicatorField& fld) {
  if (fld.values.size() == 0)
    throw validation_error("normalize_field: empty field");
  const double peak = fld.values.maxCoeff();
  if (!(peak > 0.0))
    throw numerical_error("normalize_field: field has no positive values");
  IndicatorField out = fld;
  out.values /= peak;
  return out;
}

std::vector<bool> threshold_mask(const IndicatorField& fld, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw validation_error("threshold_mask: level must lie in (0, 1)");
  if (fld.values.size() == 0)
    throw validation_error("threshold_mask: empty field");
  const double peak = fld.values.maxCoeff();
  if (peak < 1.0 - 1e-9 || peak > 1.0 + 1e-12)
    throw validation_error("threshold_mask: field must be normalized to peak 1");
  std::vector<bool> mask(static_cast<std::size_t>(fld.values.size()));
  for (Eigen::Index p = 0; p < fld.values.size(); ++p)
    mask[static_cast<std::size_t>(p)] = fld.values(p) >= level;
  return mask;
}

std::vector<bool> inside_mask(const scattering::ScattererGeometry& g,
                              const SamplingGrid& grid) {
  validate_grid(grid);
  std::vector<bool> mask(grid.size());
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x(ix);
      const double y = grid.y(iy);
      mask[grid.index(ix, iy)] = std::hypot(x, y) <= g.radius(std::atan2(y, x));
    }
  }
  return mask;
}

double jaccard(const std::vector<bool>& mask, const scattering::ScattererGeometry& g,
               const SamplingGrid& grid) {
  if (mask.size() != grid.size())
    throw validation_error("jaccard: mask size does not match the grid");
  const std::vector<bool> truth = inside_mask(g, grid);
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t p = 0; p < mask.size(); ++p) {
    if (mask[p] && truth[p]) ++inter;
    if (mask[p] || truth[p]) ++uni;
  }
  return uni == 0 ? 1.0 : double(inter) / double(uni);
}

}  // namespace regfm::imaging

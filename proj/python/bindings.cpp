#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "regfm/filters.hpp"
#include "regfm/imaging.hpp"
#include "regfm/indicator.hpp"
#include "regfm/scattering.hpp"
#include "regfm/spectra.hpp"
#include "regfm/verify.hpp"

namespace py = pybind11;
using namespace regfm;

namespace {

filters::FilterSpec spec_of(const std::string& kind, double alpha, double beta) {
  switch (filters::kind_from_name(kind)) {
    case filters::FilterKind::Tikhonov: return filters::tikhonov(alpha);
    case filters::FilterKind::Landweber: return filters::landweber(alpha, beta);
    case filters::FilterKind::GLSM: return filters::glsm(alpha);
    case filters::FilterKind::Identity: return filters::identity();
  }
  throw validation_error("unknown filter kind");
}

scattering::ScattererGeometry geometry_of(const std::string& preset, double radius,
                                          const std::vector<double>& coeffs) {
  scattering::ScattererGeometry g;
  if (preset == "star") {
    g = scattering::star_preset();
  } else if (preset == "disk") {
    g = scattering::disk_preset(radius);
  } else if (preset == "custom") {
    if (coeffs.empty() || coeffs.size() % 2 == 0)
      throw validation_error("custom geometry needs c0 followed by a/b pairs");
    g.c0 = coeffs[0];
    for (std::size_t i = 1; i + 1 < coeffs.size(); i += 2) {
      g.a.push_back(coeffs[i]);
      g.b.push_back(coeffs[i + 1]);
    }
  } else {
    throw validation_error("unknown geometry preset '" + preset + "'");
  }
  scattering::validate_geometry(g);
  return g;
}

py::dict dict_of(const verify::BoundReport& r) {
  py::dict meta;
  for (const auto& [key, value] : r.metadata) meta[py::str(key)] = value;
  py::dict out;
  out["name"] = r.bound_name;
  out["lhs"] = r.lhs;
  out["rhs"] = r.rhs;
  out["satisfied"] = r.satisfied;
  out["skipped"] = r.skipped;
  out["metadata"] = meta;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shape reconstruction from far-field data by spectral regularization";

  py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<numerical_error>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<io_error>(m, "IoError", PyExc_OSError);

  m.def(
      "hermitian_eigendecomposition",
      [](const CMatrix& M) {
        const auto E = spectra::hermitian_eigendecomposition(M);
        return py::make_tuple(E.values, E.vectors);
      },
      py::arg("M"), "Eigenvalues (non-increasing) and eigenvector columns.");

  m.def("augment_sharp", &spectra::augment_sharp, py::arg("F"),
        "|Re F| + |Im F| of a square complex matrix.");

  m.def(
      "singular_system",
      [](const CMatrix& A, double clamp_rel) {
        const auto S = spectra::singular_system(A, clamp_rel);
        return py::make_tuple(S.lambdas, S.vectors);
      },
      py::arg("A"), py::arg("clamp_rel") = 1e-14,
      "Positive clamped spectrum and eigenvectors of a Hermitian PSD matrix.");

  m.def("spectrum_distance", &spectra::spectrum_distance, py::arg("a"), py::arg("b"));
  m.def("compute_n_delta", &spectra::compute_n_delta, py::arg("lambdas"),
        py::arg("delta"));

  m.def(
      "filter_value",
      [](const std::string& kind, double alpha, double t, double beta) {
        return filters::filter_value(spec_of(kind, alpha, beta), t);
      },
      py::arg("kind"), py::arg("alpha"), py::arg("t"), py::arg("beta") = 0.0);

  m.def(
      "filter_constants",
      [](const std::string& kind, double alpha, double beta) {
        const auto c = filters::filter_constants(spec_of(kind, alpha, beta));
        return py::make_tuple(c.c_reg, c.c_alpha);
      },
      py::arg("kind"), py::arg("alpha"), py::arg("beta") = 0.0);

  m.def(
      "select_alpha",
      [](const std::string& kind, double delta, double p, double operator_norm) {
        filters::ParamRule rule;
        rule.p = p;
        rule.operator_norm = operator_norm;
        return filters::select_alpha(filters::kind_from_name(kind), delta, rule);
      },
      py::arg("kind"), py::arg("delta"), py::arg("p") = 0.125,
      py::arg("operator_norm") = 0.0);

  m.def("landweber_iterations", &filters::landweber_iterations, py::arg("alpha"));

  m.def(
      "picard_partial_sums",
      [](const RVector& lambdas, const CMatrix& vectors, const CVector& ell,
         long long truncation) {
        spectra::SingularSystem sys;
        sys.lambdas = lambdas;
        sys.vectors = vectors;
        Eigen::Index trunc = lambdas.size();
        if (truncation >= 0) trunc = std::min<Eigen::Index>(truncation, trunc);
        return indicator::picard_sum(sys, ell, static_cast<std::size_t>(trunc)).partial_sums;
      },
      py::arg("lambdas"), py::arg("vectors"), py::arg("ell"),
      py::arg("truncation") = -1);

  m.def(
      "quadratic_indicator",
      [](const std::string& kind, double alpha, const RVector& lambdas,
         const CMatrix& vectors, const CVector& ell, double beta) {
        spectra::SingularSystem sys;
        sys.lambdas = lambdas;
        sys.vectors = vectors;
        return indicator::quadratic_indicator(sys, ell, spec_of(kind, alpha, beta));
      },
      py::arg("kind"), py::arg("alpha"), py::arg("lambdas"), py::arg("vectors"),
      py::arg("ell"), py::arg("beta") = 0.0);

  m.def("glsm_functional", &indicator::glsm_functional, py::arg("A"), py::arg("x"),
        py::arg("ell"), py::arg("alpha"));

  m.def("random_psd", &verify::random_psd, py::arg("dim"), py::arg("seed"),
        py::arg("decay") = 0.5);
  m.def("perturb_operator", &verify::perturb_operator, py::arg("A"), py::arg("delta"),
        py::arg("seed"));
  m.def(
      "check_weyl",
      [](const CMatrix& A, const CMatrix& Ad) { return dict_of(verify::check_weyl(A, Ad)); },
      py::arg("A"), py::arg("A_delta"));
  m.def(
      "check_projection_bound",
      [](const CMatrix& A, const CMatrix& Ad, std::size_t n) {
        return dict_of(verify::check_projection_bound(A, Ad, n));
      },
      py::arg("A"), py::arg("A_delta"), py::arg("n"));
  m.def(
      "check_pconv_sum",
      [](const CMatrix& A, const CMatrix& Ad, const CVector& ell) {
        return dict_of(verify::check_pconv_sum(A, Ad, ell));
      },
      py::arg("A"), py::arg("A_delta"), py::arg("ell"));

  m.def(
      "gauss_legendre",
      [](std::size_t n, double a, double b) {
        auto [x, w] = scattering::gauss_legendre(n, a, b);
        return py::make_tuple(x, w);
      },
      py::arg("n"), py::arg("a") = -1.0, py::arg("b") = 1.0);

  m.def(
      "far_field",
      [](const std::string& preset, double radius, const std::vector<double>& coeffs,
         Complex n, Complex eta, double k, std::size_t directions, std::size_t radial,
         std::size_t angular) {
        const auto g = geometry_of(preset, radius, coeffs);
        scattering::Medium med;
        med.n = n;
        med.eta = eta;
        scattering::validate_medium(med);
        scattering::WaveConfig w;
        w.k = k;
        w.num_directions = directions;
        return scattering::assemble_farfield(g, med, w,
                                             scattering::make_quadrature(radial, angular));
      },
      py::arg("preset") = "star", py::arg("radius") = 0.5,
      py::arg("coeffs") = std::vector<double>{}, py::arg("n") = Complex(4.0, 2.0),
      py::arg("eta") = Complex(2.0, 1.0), py::arg("k") = 1.0,
      py::arg("directions") = 64, py::arg("radial") = 32, py::arg("angular") = 64);

  m.def(
      "disk_farfield_reference",
      [](double R, Complex n, Complex eta, double k, double angle_x, double angle_y) {
        scattering::Medium med;
        med.n = n;
        med.eta = eta;
        const Eigen::Vector2d xhat(std::cos(angle_x), std::sin(angle_x));
        const Eigen::Vector2d yhat(std::cos(angle_y), std::sin(angle_y));
        return scattering::disk_farfield_reference(R, med, k, xhat, yhat);
      },
      py::arg("R"), py::arg("n") = Complex(4.0, 2.0), py::arg("eta") = Complex(2.0, 1.0),
      py::arg("k") = 1.0, py::arg("angle_x") = 0.0, py::arg("angle_y") = 0.0);

  m.def("add_noise", &scattering::add_noise, py::arg("F"), py::arg("delta"),
        py::arg("seed"), py::arg("frobenius") = false);

  m.def(
      "rhs_vector",
      [](double zx, double zy, double k, std::size_t directions) {
        scattering::WaveConfig w;
        w.k = k;
        w.num_directions = directions;
        return scattering::rhs_vector({zx, zy}, k, w);
      },
      py::arg("zx"), py::arg("zy"), py::arg("k") = 1.0, py::arg("directions") = 64);

  m.def(
      "reconstruct",
      [](const CMatrix& F, const std::string& kind, double alpha, double beta, double k,
         double x_min, double x_max, double y_min, double y_max, std::size_t nx,
         std::size_t ny, double clamp_rel) {
        scattering::WaveConfig w;
        w.k = k;
        w.num_directions = static_cast<std::size_t>(F.rows());
        imaging::SamplingGrid grid{x_min, x_max, y_min, y_max, nx, ny};
        const auto field =
            imaging::reconstruct(F, spec_of(kind, alpha, beta), w, grid, clamp_rel);
        RMatrix out(static_cast<Eigen::Index>(ny), static_cast<Eigen::Index>(nx));
        for (std::size_t iy = 0; iy < ny; ++iy)
          for (std::size_t ix = 0; ix < nx; ++ix)
            out(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix)) =
                field.values(static_cast<Eigen::Index>(grid.index(ix, iy)));
        return out;
      },
      py::arg("F"), py::arg("kind") = "identity", py::arg("alpha") = 1e-5,
      py::arg("beta") = 0.0, py::arg("k") = 1.0, py::arg("x_min") = -1.0,
      py::arg("x_max") = 1.0, py::arg("y_min") = -1.0, py::arg("y_max") = 1.0,
      py::arg("nx") = 128, py::arg("ny") = 128, py::arg("clamp_rel") = 1e-14);

  m.def(
      "jaccard",
      [](const std::vector<bool>& mask, const std::string& preset, double radius,
         const std::vector<double>& coeffs, double x_min, double x_max, double y_min,
         double y_max, std::size_t nx, std::size_t ny) {
        imaging::SamplingGrid grid{x_min, x_max, y_min, y_max, nx, ny};
        return imaging::jaccard(mask, geometry_of(preset, radius, coeffs), grid);
      },
      py::arg("mask"), py::arg("preset") = "star", py::arg("radius") = 0.5,
      py::arg("coeffs") = std::vector<double>{}, py::arg("x_min") = -1.0,
      py::arg("x_max") = 1.0, py::arg("y_min") = -1.0, py::arg("y_max") = 1.0,
      py::arg("nx") = 128, py::arg("ny") = 128);
}

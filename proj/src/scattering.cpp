#include "regfm/scattering.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "regfm/rng.hpp"

namespace regfm::scattering {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_unit(const Eigen::Vector2d& v, const char* who) {
  if (std::abs(v.norm() - 1.0) > 1e-12)
    throw validation_error(std::string(who) + ": direction must be a unit vector");
}

void require_rule(const QuadratureRule& q, const char* who) {
  const bool ok = q.radial_points >= 1 && q.angular_points >= 1 &&
                  q.radial_nodes.size() == static_cast<Eigen::Index>(q.radial_points) &&
                  q.radial_weights.size() == static_cast<Eigen::Index>(q.radial_points) &&
                  q.angular_nodes.size() == static_cast<Eigen::Index>(q.angular_points) &&
                  q.angular_weight > 0.0;
  if (!ok) throw validation_error(std::string(who) + ": quadrature rule not initialized");
}

/* Legendre P_n and its derivative at z via the three-term recurrence. */
std::pair<double, double> legendre_eval(std::size_t n, double z) {
  double p0 = 1.0;
  double p1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double p2 = p1;
    p1 = p0;
    p0 = ((2.0 * double(j) + 1.0) * z * p1 - double(j) * p2) / double(j + 1);
  }
  const double dp = double(n) * (z * p0 - p1) / (z * z - 1.0);
  return {p0, dp};
}

}  // namespace

double ScattererGeometry::radius(double theta) const {
  double r = c0;
  const std::size_t terms = std::max(a.size(), b.size());
  for (std::size_t k = 1; k <= terms; ++k) {
    const double kt = double(k) * theta;
    if (k <= a.size()) r += a[k - 1] * std::cos(kt);
    if (k <= b.size()) r += b[k - 1] * std::sin(kt);
  }
  return r;
}

double ScattererGeometry::radius_derivative(double theta) const {
  double dr = 0.0;
  const std::size_t terms = std::max(a.size(), b.size());
  for (std::size_t k = 1; k <= terms; ++k) {
    const double kt = double(k) * theta;
    if (k <= a.size()) dr -= double(k) * a[k - 1] * std::sin(kt);
    if (k <= b.size()) dr += double(k) * b[k - 1] * std::cos(kt);
  }
  return dr;
}

ScattererGeometry star_preset() {
  ScattererGeometry g;
  g.c0 = 0.5;
  g.a = {};
  g.b = {0.0, 0.0, 0.0, -0.15};
  return g;
}

ScattererGeometry disk_preset(double R) {
  ScattererGeometry g;
  g.c0 = R;
  return g;
}

void validate_geometry(const ScattererGeometry& g) {
  if (!std::isfinite(g.c0))
    throw validation_error("geometry: coefficients must be finite");
  for (double c : g.a)
    if (!std::isfinite(c)) throw validation_error("geometry: coefficients must be finite");
  for (double c : g.b)
    if (!std::isfinite(c)) throw validation_error("geometry: coefficients must be finite");
  constexpr std::size_t kSamples = 4096;
  for (std::size_t j = 0; j < kSamples; ++j) {
    if (!(g.radius(kTwoPi * double(j) / double(kSamples)) > 0.0))
      throw validation_error("geometry: radius must be positive everywhere");
  }
}

void validate_medium(const Medium& m) {
  if (!std::isfinite(m.n.real()) || !std::isfinite(m.n.imag()) ||
      !std::isfinite(m.eta.real()) || !std::isfinite(m.eta.imag()))
    throw validation_error("medium: parameters must be finite");
  if (m.n.imag() < 0.0)
    throw validation_error("medium: Im(n) must be nonnegative");
  if (m.eta.imag() < 0.0)
    throw validation_error("medium: Im(eta) must be nonnegative");
}

Eigen::Vector2d WaveConfig::direction(std::size_t i) const {
  const double angle = kTwoPi * double(i) / double(num_directions);
  return {std::cos(angle), std::sin(angle)};
}

void validate_wave(const WaveConfig& w) {
  if (!(w.k > 0.0) || !std::isfinite(w.k))
    throw validation_error("wave: k must be positive");
  if (w.num_directions < 2)
    throw validation_error("wave: at least two directions required");
}

std::pair<RVector, RVector> gauss_legendre(std::size_t npts, double a, double b) {
  if (npts < 1) throw validation_error("gauss_legendre: need at least one node");
  if (!(a < b)) throw validation_error("gauss_legendre: interval must satisfy a < b");

  const Eigen::Index n = static_cast<Eigen::Index>(npts);
  RVector x(n), w(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  for (Eigen::Index i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (double(i) + 0.75) / (double(n) + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_eval(npts, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double dp = legendre_eval(npts, z).second;
    x(i) = mid - half * z;
    x(n - 1 - i) = mid + half * z;
    w(i) = w(n - 1 - i) = (b - a) / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

QuadratureRule make_quadrature(std::size_t radial_points, std::size_t angular_points) {
  if (radial_points < 1 || angular_points < 1)
    throw validation_error("make_quadrature: point counts must be at least 1");
  QuadratureRule q;
  q.radial_points = radial_points;
  q.angular_points = angular_points;
  auto [nodes, weights] = gauss_legendre(radial_points, 0.0, 1.0);
  q.radial_nodes = std::move(nodes);
  q.radial_weights = std::move(weights);
  q.angular_nodes.resize(static_cast<Eigen::Index>(angular_points));
  for (std::size_t j = 0; j < angular_points; ++j)
    q.angular_nodes(static_cast<Eigen::Index>(j)) = kTwoPi * double(j) / double(angular_points);
  q.angular_weight = kTwoPi / double(angular_points);
  return q;
}

BoundaryPoint boundary_point(const ScattererGeometry& g, double theta) {
  const double r = g.radius(theta);
  const double dr = g.radius_derivative(theta);
  return {{r * std::cos(theta), r * std::sin(theta)}, std::sqrt(r * r + dr * dr)};
}

Complex born_farfield_entry(const ScattererGeometry& g, const Medium& m, double k,
                            const Eigen::Vector2d& xhat, const Eigen::Vector2d& yhat,
                            const QuadratureRule& q) {
  if (!(k > 0.0)) throw validation_error("born_farfield_entry: k must be positive");
  require_unit(xhat, "born_farfield_entry");
  require_unit(yhat, "born_farfield_entry");
  require_rule(q, "born_farfield_entry");

  const Eigen::Vector2d d = xhat - yhat;
  Complex volume{0.0, 0.0};
  Complex boundary{0.0, 0.0};

  for (Eigen::Index j = 0; j < q.angular_nodes.size(); ++j) {
    const double theta = q.angular_nodes(j);
    const double r = g.radius(theta);
    const double dr = g.radius_derivative(theta);
    const double ud = std::cos(theta) * d.x() + std::sin(theta) * d.y();

    Complex radial{0.0, 0.0};
    for (Eigen::Index i = 0; i < q.radial_nodes.size(); ++i) {
      const double s = q.radial_nodes(i);
      radial += q.radial_weights(i) * s * std::polar(1.0, -k * r * s * ud);
    }
    volume += r * r * radial;
    boundary += std::sqrt(r * r + dr * dr) * std::polar(1.0, -k * r * ud);
  }
  volume *= q.angular_weight;
  boundary *= q.angular_weight;
  return k * k * (m.n - 1.0) * volume + m.eta * boundary;
}

Complex disk_farfield_reference(double R, const Medium& m, double k,
                                const Eigen::Vector2d& xhat, const Eigen::Vector2d& yhat) {
  if (!(R > 0.0)) throw validation_error("disk_farfield_reference: R must be positive");
  if (!(k > 0.0)) throw validation_error("disk_farfield_reference: k must be positive");
  require_unit(xhat, "disk_farfield_reference");
  require_unit(yhat, "disk_farfield_reference");

  const double dn = (xhat - yhat).norm();
  if (dn == 0.0)
    return k * k * (m.n - 1.0) * kPi * R * R + m.eta * kTwoPi * R;
  const double arg = k * R * dn;
  const double volume = kTwoPi * R * std::cyl_bessel_j(1.0, arg) / (k * dn);
  const double boundary = kTwoPi * R * std::cyl_bessel_j(0.0, arg);
  return k * k * (m.n - 1.0) * volume + m.eta * boundary;
}

CMatrix assemble_farfield(const ScattererGeometry& g, const Medium& m,
                          const WaveConfig& w, const QuadratureRule& q) {
  validate_geometry(g);
  validate_medium(m);
  validate_wave(w);
  require_rule(q, "assemble_farfield");

  const Eigen::Index N = static_cast<Eigen::Index>(w.num_directions);
  CMatrix F(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::Vector2d xhat = w.direction(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < N; ++j) {
      const Eigen::Vector2d yhat = w.direction(static_cast<std::size_t>(j));
      F(i, j) = born_farfield_entry(g, m, w.k, xhat, yhat, q);
    }
  }
  return F;
}

CMatrix add_noise(const CMatrix& F, double delta, std::uint64_t seed, bool frobenius) {
  if (!(delta >= 0.0)) throw validation_error("add_noise: delta must be nonnegative");
  if (delta == 0.0) return F;

  Rng rng(seed);
  CMatrix E(F.rows(), F.cols());
  for (Eigen::Index i = 0; i < F.rows(); ++i)
    for (Eigen::Index j = 0; j < F.cols(); ++j) E(i, j) = Complex(rng.upm1(), rng.upm1());

  double norm = 0.0;
  if (frobenius) {
    norm = E.norm();
  } else {
    Eigen::JacobiSVD<CMatrix> svd(E);
    norm = svd.singularValues()(0);
  }
  if (!(norm > 0.0)) throw numerical_error("add_noise: degenerate noise draw");
  E /= norm;
  return F.array() * (1.0 + delta * E.array());
}

CVector rhs_vector(const Eigen::Vector2d& z, double k, const WaveConfig& w) {
  if (!(k > 0.0)) throw validation_error("rhs_vector: k must be positive");
  validate_wave(w);
  CVector ell(static_cast<Eigen::Index>(w.num_directions));
  for (std::size_t i = 0; i < w.num_directions; ++i) {
    const Eigen::Vector2d xhat = w.direction(i);
    ell(static_cast<Eigen::Index>(i)) = std::polar(1.0, -k * xhat.dot(z));
  }
  return ell;
}

}  // namespace regfm::scattering

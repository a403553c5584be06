// Acceptance gate: one PASS/FAIL line per criterion, exit 1 on any failure.
// Tolerances are pinned inline next to each check.

#include <sys/wait.h>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "regfm/filters.hpp"
#include "regfm/imaging.hpp"
#include "regfm/indicator.hpp"
#include "regfm/io.hpp"
#include "regfm/rng.hpp"
#include "regfm/scattering.hpp"
#include "regfm/spectra.hpp"
#include "regfm/verify.hpp"

namespace {

using namespace regfm;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi_v<double>;

int g_failures = 0;

void report(const std::string& label, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] %s: %s (%s)\n", label.c_str(), name.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Eigen::Vector2d unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

CVector random_cvector(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.cgauss();
  return v;
}

CMatrix star_farfield() {
  return scattering::assemble_farfield(scattering::star_preset(), scattering::Medium{},
                                       scattering::WaveConfig{},
                                       scattering::make_quadrature(32, 64));
}

void criterion_parameter_rule(const CMatrix& F_star) {
  const double tik = filters::select_alpha(filters::FilterKind::Tikhonov, 0.01, {});
  const double gl = filters::select_alpha(filters::FilterKind::GLSM, 0.01, {});

  const CMatrix noisy = scattering::add_noise(F_star, 0.01, 1);
  const CMatrix sharp = spectra::augment_sharp(noisy);
  const double norm = Eigen::JacobiSVD<CMatrix>(sharp).singularValues()(0);
  filters::ParamRule rule;
  rule.operator_norm = norm;
  const double land = filters::select_alpha(filters::FilterKind::Landweber, 0.01, rule);
  const double expect = std::pow(0.01, 0.125) / (2.0 * norm * norm);
  const double land_rel = std::abs(land - expect) / expect;

  const bool pass = std::abs(tik - 0.1406) <= 5e-5 && std::abs(gl - 0.7499) <= 5e-5 &&
                    land_rel <= 1e-12;
  report("1", "analytic parameter rule", pass,
         "tikhonov=" + num(tik) + " glsm=" + num(gl) + " landweber_rel=" + num(land_rel));
}

void criterion_filter_forms() {
  Rng rng(2024);
  const long long samples = 10000;
  long long violations = 0;
  double max_dev = 0.0;
  for (long long i = 0; i < samples; ++i) {
    const double alpha = std::pow(10.0, rng.uniform(-6.0, 0.0));
    const double t = rng.uniform(0.0, 3.0);
    filters::FilterSpec spec;
    double closed = 0.0;
    switch (i % 3) {
      case 0:
        spec = filters::tikhonov(alpha);
        closed = t * t / (t * t + alpha);
        break;
      case 1: {
        const double beta = 1.0 / 18.0;  // beta t^2 <= 1/2 over t in [0, 3]
        spec = filters::landweber(alpha, beta);
        const long long m = static_cast<long long>(std::ceil(1.0 / alpha));
        closed = 1.0 - std::pow(1.0 - beta * t * t, static_cast<double>(m));
        break;
      }
      default:
        spec = filters::glsm(alpha);
        closed = t / (alpha + t);
        break;
    }
    const double phi = filters::filter_value(spec, t);
    const auto c = filters::filter_constants(spec);
    max_dev = std::max(max_dev, std::abs(phi - closed));
    if (std::abs(phi - closed) > 1e-12 || phi > 1.0 + 1e-12 ||
        phi > c.c_alpha * t + 1e-12)
      ++violations;
  }
  report("2", "filter closed forms and bounds", violations == 0,
         "samples=" + std::to_string(samples) + " violations=" +
             std::to_string(violations) + " max_dev=" + num(max_dev));
}

void criterion_perturbation_bounds() {
  long long checks = 0, skipped = 0, failures = 0;
  int dim_idx = 0;
  for (std::size_t dim : {8u, 32u}) {
    int delta_idx = 0;
    for (double delta : {1e-2, 1e-4}) {
      for (std::uint64_t trial = 0; trial < 200; ++trial) {
        const std::uint64_t base =
            40000 + 20000 * std::uint64_t(dim_idx) + 10000 * std::uint64_t(delta_idx) +
            trial * 7;
        const CMatrix A = verify::random_psd(dim, base, 0.5);
        const CMatrix Ad = verify::perturb_operator(A, delta, base + 1);
        auto tally = [&](const verify::BoundReport& r) {
          ++checks;
          if (r.skipped) ++skipped;
          if (!r.satisfied) ++failures;
        };
        tally(verify::check_weyl(A, Ad));
        for (std::size_t n = 1; n <= dim; ++n)
          tally(verify::check_projection_bound(A, Ad, n));
        tally(verify::check_pconv_sum(A, Ad,
                                      random_cvector(Eigen::Index(dim), base + 2)));
      }
      ++delta_idx;
    }
    ++dim_idx;
  }
  report("3", "perturbation bound sweep", failures == 0,
         "checks=" + std::to_string(checks) + " skipped=" + std::to_string(skipped) +
             " failures=" + std::to_string(failures));
}

void criterion_quadrature_oracle() {
  const double R = 0.5;
  const auto disk = scattering::disk_preset(R);
  const scattering::Medium m;
  const auto q = scattering::make_quadrature(32, 64);

  Rng rng(777);
  double max_rel = 0.0;
  for (double k : {1.0, 2.0, 4.0}) {  // kR in {0.5, 1, 2}
    for (int pair = 0; pair < 100; ++pair) {
      const auto xhat = unit(rng.uniform(0.0, 2.0 * kPi));
      const auto yhat = unit(rng.uniform(0.0, 2.0 * kPi));
      const Complex got = scattering::born_farfield_entry(disk, m, k, xhat, yhat, q);
      const Complex want = scattering::disk_farfield_reference(R, m, k, xhat, yhat);
      max_rel = std::max(max_rel, std::abs(got - want) / std::abs(want));
    }
  }

  const Complex fw = scattering::born_farfield_entry(disk, m, 1.0, unit(0.0), unit(0.0), q);
  const double fw_abs = std::abs(fw - Complex(2.75 * kPi, 1.5 * kPi));

  report("4", "disk quadrature vs bessel oracle", max_rel <= 1e-8 && fw_abs <= 1e-10,
         "max_rel=" + num(max_rel) + " forward_abs=" + num(fw_abs));
}

void criterion_glsm_equivalence() {
  double worst_rel = 0.0;
  long long minimality_breaks = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const std::uint64_t seed = 6000 + trial * 11;
    const CMatrix A = verify::random_psd(16, seed, 0.6);
    const auto sys = spectra::singular_system(A, 0.0);
    const CVector ell = random_cvector(16, seed + 1);
    const double alpha = 0.02 * double(1 + trial % 7);

    const CVector xf = indicator::assemble_solution(
        sys, indicator::regularized_solution_coeffs(sys, ell, filters::glsm(alpha)));
    const CMatrix M = alpha * A + A * A;
    const CVector xd = M.ldlt().solve(A * ell);
    worst_rel = std::max(worst_rel, (xf - xd).norm() / (1.0 + xd.norm()));

    const double j0 = indicator::glsm_functional(A, xf, ell, alpha);
    Rng prng(seed + 2);
    const double scale = 0.1 * (1.0 + xf.norm());
    for (int p = 0; p < 50; ++p) {
      CVector dx(16);
      for (Eigen::Index i = 0; i < 16; ++i) dx(i) = scale * prng.cgauss();
      if (j0 > indicator::glsm_functional(A, xf + dx, ell, alpha) + 1e-10)
        ++minimality_breaks;
    }
  }
  report("5", "glsm solution vs direct minimizer", worst_rel <= 1e-8 &&
                                                       minimality_breaks == 0,
         "worst_rel=" + num(worst_rel) + " minimality_breaks=" +
             std::to_string(minimality_breaks));
}

void criterion_picard_dichotomy() {
  int good = 0;
  double worst_in = 0.0, worst_out = 1e300;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    CMatrix S(16, 64);
    for (Eigen::Index i = 0; i < S.rows(); ++i)
      for (Eigen::Index j = 0; j < S.cols(); ++j) S(i, j) = rng.cgauss();
    CMatrix A = S.adjoint() * S;
    A = ((A + A.adjoint()) * 0.5).eval();
    const auto sys = spectra::singular_system(A, 0.0);
    const std::size_t retained = static_cast<std::size_t>(sys.lambdas.size());

    CVector ell_in = A * random_cvector(64, seed + 100);
    ell_in /= ell_in.norm();
    CVector ell_out = random_cvector(64, seed + 200);
    ell_out /= ell_out.norm();

    const auto rin = indicator::picard_sum(sys, ell_in, retained);
    const auto rout = indicator::picard_sum(sys, ell_out, retained);
    const double ratio_in = rin.partial_sums.back() / rin.partial_sums[retained / 2 - 1];
    const double ratio_out =
        rout.partial_sums.back() / rout.partial_sums[retained / 2 - 1];
    worst_in = std::max(worst_in, ratio_in);
    worst_out = std::min(worst_out, ratio_out);
    if (ratio_in < 2.0 && ratio_out > 10.0) ++good;
  }
  report("6", "picard range dichotomy", good == 20,
         "seeds_ok=" + std::to_string(good) + "/20 worst_in=" + num(worst_in) +
             " worst_out=" + num(worst_out));
}

void criterion_reconstruction_quality(const CMatrix& F_star) {
  const imaging::SamplingGrid grid;  // [-1,1]^2 at 128x128
  const auto star = scattering::star_preset();
  const scattering::WaveConfig w;
  const double level = 0.5;

  auto score = [&](const CMatrix& data, const filters::FilterSpec& f) {
    const auto fld = imaging::reconstruct(data, f, w, grid, 1e-14);
    const auto mask = imaging::threshold_mask(imaging::normalize_field(fld), level);
    return imaging::jaccard(mask, star, grid);
  };

  const double noiseless = score(F_star, filters::identity());
  report("7a", "noiseless identity-filter jaccard", noiseless >= 0.5,
         "measured=" + num(noiseless) + " required>=0.5");

  double sum_id = 0.0, sum_land = 0.0, sum_tik = 0.0, sum_glsm = 0.0;
  const int seeds = 10;
  for (int seed = 1; seed <= seeds; ++seed) {
    const CMatrix Fd = scattering::add_noise(F_star, 0.05, std::uint64_t(seed));
    sum_id += score(Fd, filters::identity());
    sum_land += score(Fd, filters::landweber(1e-5));
    sum_tik += score(Fd, filters::tikhonov(1e-5));
    sum_glsm += score(Fd, filters::glsm(1e-5));
  }
  const double mean_id = sum_id / seeds, mean_land = sum_land / seeds;
  const double mean_tik = sum_tik / seeds, mean_glsm = sum_glsm / seeds;

  report("7b", "landweber beats identity under noise", mean_land > mean_id,
         "mean_landweber=" + num(mean_land) + " mean_identity=" + num(mean_id) +
             " over " + std::to_string(seeds) + " seeds");
  report("7c", "tikhonov and glsm mean jaccard", mean_tik >= 0.4 && mean_glsm >= 0.4,
         "mean_tikhonov=" + num(mean_tik) + " mean_glsm=" + num(mean_glsm) +
             " required>=0.4");
}

int run_cmd(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -2;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return "<unreadable:" + path.string() + ">";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_pipeline_determinism() {
  const char* cli = std::getenv("REGFM_CLI");
  if (cli == nullptr || *cli == '\0') {
    report("8", "pipeline determinism", false, "REGFM_CLI not set");
    return;
  }

  const fs::path root = fs::temp_directory_path() / "regfm_acceptance";
  std::error_code ec;
  fs::remove_all(root, ec);
  fs::create_directories(root);
  const fs::path cfg_path = root / "run.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "noise.delta = 0.05\nnoise.seed = 3\nfilter.kind = landweber\n"
           "filter.alpha = 1e-5\ngrid.nx = 64\ngrid.ny = 64\n";
  }

  const std::string exe = std::string("\"") + cli + "\"";
  const std::string conf = " --config \"" + cfg_path.string() + "\" --quiet";
  for (int run = 1; run <= 2; ++run) {
    const fs::path dir = root / ("run" + std::to_string(run));
    fs::create_directories(dir);
    const std::string far = (dir / "far.mat").string();
    const std::string noisy = (dir / "noisy.mat").string();
    const std::string base = (dir / "field").string();
    if (run_cmd(exe + " synthesize" + conf + " --out \"" + far + "\"") != 0 ||
        run_cmd(exe + " perturb" + conf + " --in \"" + far + "\" --out \"" + noisy +
                "\"") != 0 ||
        run_cmd(exe + " reconstruct" + conf + " --in \"" + noisy + "\" --out \"" + base +
                "\"") != 0) {
      report("8", "pipeline determinism", false, "a pipeline stage exited nonzero");
      fs::remove_all(root, ec);
      return;
    }
  }

  std::vector<std::string> names = {"far.mat", "noisy.mat", "field_field.csv",
                                    "field_field.pgm"};
  std::string mismatch;
  for (const auto& name : names) {
    if (slurp(root / "run1" / name) != slurp(root / "run2" / name)) {
      mismatch = name;
      break;
    }
  }
  fs::remove_all(root, ec);
  report("8", "pipeline determinism", mismatch.empty(),
         mismatch.empty() ? "matrix, csv, and pgm byte-identical across two runs"
                          : "mismatch in " + mismatch);
}

}  // namespace

int main() {
  const CMatrix F_star = star_farfield();

  criterion_parameter_rule(F_star);
  criterion_filter_forms();
  criterion_perturbation_bounds();
  criterion_quadrature_oracle();
  criterion_glsm_equivalence();
  criterion_picard_dichotomy();
  criterion_reconstruction_quality(F_star);
  criterion_pipeline_determinism();

  std::printf("acceptance: %d criterion line(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}

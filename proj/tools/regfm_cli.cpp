#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
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

struct CommonArgs {
  std::string config_path;
  std::string in_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

io::RunConfig config_of(const CommonArgs& args) {
  if (args.config_path.empty()) return io::RunConfig{};
  return io::load_config(args.config_path);
}

std::uint64_t effective_seed(const CommonArgs& args, const io::RunConfig& cfg) {
  return args.seed.value_or(cfg.noise_seed);
}

void say(const CommonArgs& args, const std::string& msg) {
  if (!args.quiet) std::cout << msg << "\n";
}

/* Build the FilterSpec for a run; the far-field matrix is needed only when an
 * automatic Landweber alpha asks for the operator norm. */
filters::FilterSpec filter_of(const io::RunConfig& cfg, const CMatrix* F) {
  const filters::FilterKind kind = filters::kind_from_name(cfg.filter_kind);
  double alpha = cfg.filter_alpha;
  if (cfg.filter_auto) {
    filters::ParamRule rule;
    rule.p = cfg.filter_p;
    if (kind == filters::FilterKind::Landweber) {
      if (F == nullptr)
        throw validation_error("automatic landweber alpha requires an input matrix");
      rule.operator_norm = spectra::spectral_norm_hermitian(spectra::augment_sharp(*F));
    }
    alpha = filters::select_alpha(kind, cfg.noise_delta, rule);
  }
  switch (kind) {
    case filters::FilterKind::Tikhonov: return filters::tikhonov(alpha);
    case filters::FilterKind::Landweber:
      return filters::landweber(alpha, cfg.filter_beta > 0.0 ? cfg.filter_beta : 0.0);
    case filters::FilterKind::GLSM: return filters::glsm(alpha);
    case filters::FilterKind::Identity: return filters::identity();
  }
  throw validation_error("unknown filter kind");
}

void emit_text(const CommonArgs& args, const std::string& text) {
  if (!args.out_path.empty()) io::atomic_write(args.out_path, text);
  if (!args.quiet) std::cout << text;
}

void run_synthesize(const CommonArgs& args) {
  const io::RunConfig cfg = config_of(args);
  const auto g = io::geometry_from(cfg);
  const auto m = io::medium_from(cfg);
  const auto w = io::wave_from(cfg);
  const auto q = io::quadrature_from(cfg);
  const CMatrix F = scattering::assemble_farfield(g, m, w, q);
  const std::string out =
      args.out_path.empty() ? cfg.output_prefix + "_farfield.mat" : args.out_path;
  io::write_matrix(F, out);
  say(args, "far-field matrix (" + std::to_string(F.rows()) + "x" +
                std::to_string(F.cols()) + ") written to " + out);
}

void run_perturb(const CommonArgs& args) {
  const io::RunConfig cfg = config_of(args);
  if (args.in_path.empty()) throw validation_error("perturb: --in matrix required");
  const CMatrix F = io::read_matrix(args.in_path);
  const std::uint64_t seed = effective_seed(args, cfg);
  const CMatrix Fd = scattering::add_noise(F, cfg.noise_delta, seed,
                                           cfg.noise_norm == "frobenius");
  const std::string out =
      args.out_path.empty() ? cfg.output_prefix + "_noisy.mat" : args.out_path;
  io::write_matrix(Fd, out);
  say(args, "noisy matrix (delta = " + format_full(cfg.noise_delta) + ", seed = " +
                std::to_string(seed) + ") written to " + out);
}

void run_reconstruct(const CommonArgs& args) {
  const io::RunConfig cfg = config_of(args);
  if (args.in_path.empty()) throw validation_error("reconstruct: --in matrix required");
  const CMatrix F = io::read_matrix(args.in_path);
  const auto w = io::wave_from(cfg);
  const auto grid = io::grid_from(cfg);
  const filters::FilterSpec f = filter_of(cfg, &F);

  imaging::IndicatorField field = imaging::reconstruct(F, f, w, grid, cfg.clamp_rel);
  field.meta.delta = cfg.noise_delta;
  field.meta.seed = effective_seed(args, cfg);

  const std::string prefix = args.out_path.empty() ? cfg.output_prefix : args.out_path;
  io::write_field_csv(field, prefix + "_field.csv");
  const imaging::IndicatorField normalized = imaging::normalize_field(field);
  io::write_pgm(normalized, prefix + "_field.pgm");
  say(args, "field written to " + prefix + "_field.csv and " + prefix + "_field.pgm");

  const auto truth = io::geometry_from(cfg);
  const double at_config = imaging::jaccard(
      imaging::threshold_mask(normalized, cfg.threshold), truth, grid);
  say(args, "jaccard(threshold = " + format_full(cfg.threshold) +
                ") = " + format_full(at_config));
  for (int i = 1; i <= 9; ++i) {
    const double level = 0.1 * i;
    const double j =
        imaging::jaccard(imaging::threshold_mask(normalized, level), truth, grid);
    say(args, "jaccard(" + format_full(level) + ") = " + format_full(j));
  }
}

void run_param_select(const CommonArgs& args) {
  const io::RunConfig cfg = config_of(args);
  const filters::FilterKind kind = filters::kind_from_name(cfg.filter_kind);
  filters::ParamRule rule;
  rule.p = cfg.filter_p;
  if (kind == filters::FilterKind::Landweber) {
    if (args.in_path.empty())
      throw validation_error(
          "param-select: landweber needs --in matrix for the operator norm");
    const CMatrix F = io::read_matrix(args.in_path);
    rule.operator_norm = spectra::spectral_norm_hermitian(spectra::augment_sharp(F));
  }
  const double alpha = filters::select_alpha(kind, cfg.noise_delta, rule);
  std::string text = "alpha = " + format_full(alpha) + "\n";
  if (kind == filters::FilterKind::Landweber) {
    text += "m = " + std::to_string(filters::landweber_iterations(alpha)) + "\n";
    text += "operator_norm = " + format_full(rule.operator_norm) + "\n";
  }
  emit_text(args, text);
}

void run_verify(const CommonArgs& args) {
  const io::RunConfig cfg = config_of(args);
  const std::uint64_t base = effective_seed(args, cfg);

  std::string lines;
  std::size_t total = 0, failed = 0, skipped = 0;
  std::uint64_t counter = 0;
  auto add = [&](verify::BoundReport r, std::uint64_t seed_used) {
    r.metadata.emplace_back("seed", std::to_string(seed_used));
    lines += verify::report_line(r);
    lines += '\n';
    ++total;
    if (r.skipped) ++skipped;
    if (!r.satisfied) ++failed;
  };

  for (std::size_t dim : cfg.verify_dims) {
    for (double delta : cfg.verify_deltas) {
      for (std::size_t t = 0; t < cfg.verify_trials; ++t) {
        const std::uint64_t sA = base + counter++;
        const std::uint64_t sP = base + counter++;
        const std::uint64_t sL = base + counter++;
        const CMatrix A = verify::random_psd(dim, sA, cfg.verify_decay);
        const CMatrix Ad = verify::perturb_operator(A, delta, sP);
        add(verify::check_weyl(A, Ad), sA);
        for (std::size_t n = 1; n <= dim; ++n)
          add(verify::check_projection_bound(A, Ad, n), sA);
        Rng rng(sL);
        CVector ell(static_cast<Eigen::Index>(dim));
        for (Eigen::Index i = 0; i < ell.size(); ++i) ell(i) = rng.cgauss();
        add(verify::check_pconv_sum(A, Ad, ell), sA);
      }
    }
  }

  const std::string summary = "summary total=" + std::to_string(total) +
                              " failed=" + std::to_string(failed) +
                              " skipped=" + std::to_string(skipped);
  lines += summary + "\n";
  const std::string out =
      args.out_path.empty() ? cfg.output_prefix + "_verify.txt" : args.out_path;
  io::atomic_write(out, lines);
  say(args, summary);
  say(args, "report written to " + out);
  if (failed > 0)
    throw numerical_error("verify: " + std::to_string(failed) + " bound checks failed");
}

void run_picard(const CommonArgs& args, double zx, double zy, long long truncation) {
  const io::RunConfig cfg = config_of(args);
  if (args.in_path.empty()) throw validation_error("picard: --in matrix required");
  const CMatrix F = io::read_matrix(args.in_path);
  auto w = io::wave_from(cfg);
  if (F.rows() != static_cast<Eigen::Index>(w.num_directions))
    throw validation_error("picard: matrix size does not match wave.directions");

  const spectra::SingularSystem sys =
      spectra::singular_system(spectra::augment_sharp(F), cfg.clamp_rel);
  const CVector ell = scattering::rhs_vector({zx, zy}, w.k, w);
  Eigen::Index trunc = sys.lambdas.size();
  if (truncation >= 0) trunc = std::min<Eigen::Index>(truncation, trunc);
  const indicator::PicardReport report =
      indicator::picard_sum(sys, ell, static_cast<std::size_t>(trunc));

  std::string text = "# z = (" + format_full(zx) + ", " + format_full(zy) + ")\n";
  text += "# n lambda partial_sum\n";
  for (Eigen::Index n = 0; n < trunc; ++n) {
    text += std::to_string(n + 1);
    text += ' ';
    text += format_full(sys.lambdas(n));
    text += ' ';
    text += format_full(report.partial_sums[static_cast<std::size_t>(n)]);
    text += '\n';
  }
  emit_text(args, text);
}

void attach_common(CLI::App* sub, CommonArgs& args, bool with_in) {
  sub->add_option("--config", args.config_path, "config file (key = value lines)");
  if (with_in) sub->add_option("--in", args.in_path, "input matrix path");
  sub->add_option("--out", args.out_path, "output path");
  sub->add_option("--seed", args.seed, "seed override");
  sub->add_flag("--quiet", args.quiet, "suppress stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape reconstruction from far-field data by spectral regularization"};
  app.require_subcommand(1);

  CommonArgs synth_args, perturb_args, recon_args, param_args, verify_args, picard_args;
  double zx = 0.0, zy = 0.0;
  long long truncation = -1;

  CLI::App* synth = app.add_subcommand("synthesize", "geometry -> far-field matrix");
  attach_common(synth, synth_args, false);
  CLI::App* pert = app.add_subcommand("perturb", "matrix + delta + seed -> noisy matrix");
  attach_common(pert, perturb_args, true);
  CLI::App* recon =
      app.add_subcommand("reconstruct", "matrix + filter + grid -> field CSV + PGM");
  attach_common(recon, recon_args, true);
  CLI::App* param =
      app.add_subcommand("param-select", "noise level + filter kind -> alpha");
  attach_common(param, param_args, true);
  CLI::App* verf =
      app.add_subcommand("verify", "randomized spectral stability bound checks");
  attach_common(verf, verify_args, false);
  CLI::App* pic = app.add_subcommand("picard", "partial-sum table at a sampling point");
  attach_common(pic, picard_args, true);
  pic->add_option("--zx", zx, "sampling point x");
  pic->add_option("--zy", zy, "sampling point y");
  pic->add_option("--truncation", truncation, "number of modes (default all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (synth->parsed()) run_synthesize(synth_args);
    if (pert->parsed()) run_perturb(perturb_args);
    if (recon->parsed()) run_reconstruct(recon_args);
    if (param->parsed()) run_param_select(param_args);
    if (verf->parsed()) run_verify(verify_args);
    if (pic->parsed()) run_picard(picard_args, zx, zy, truncation);
    return 0;
  } catch (const regfm::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const regfm::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const regfm::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#include "regfm/io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>

#include "regfm/filters.hpp"

namespace regfm::io {

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw validation_error("line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, std::size_t line, const std::string& key) {
  if (v.empty()) fail(line, key + ": empty value");
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size()) fail(line, key + ": malformed number '" + v + "'");
  if (!std::isfinite(x)) fail(line, key + ": value must be finite");
  return x;
}

unsigned long long parse_unsigned(const std::string& v, std::size_t line,
                                  const std::string& key) {
  if (v.empty()) fail(line, key + ": empty value");
  for (char c : v)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(line, key + ": malformed count '" + v + "'");
  errno = 0;
  const unsigned long long x = std::strtoull(v.c_str(), nullptr, 10);
  if (errno == ERANGE) fail(line, key + ": value out of range");
  return x;
}

bool parse_bool(const std::string& v, std::size_t line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(line, key + ": expected true or false, got '" + v + "'");
}

std::vector<std::string> tokens_of(const std::string& v) {
  std::istringstream ss(v);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<double> parse_double_list(const std::string& v, std::size_t line,
                                      const std::string& key) {
  std::vector<double> out;
  for (const std::string& tok : tokens_of(v)) out.push_back(parse_double(tok, line, key));
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& v, std::size_t line,
                                         const std::string& key) {
  std::vector<std::size_t> out;
  for (const std::string& tok : tokens_of(v))
    out.push_back(static_cast<std::size_t>(parse_unsigned(tok, line, key)));
  return out;
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value,
               std::size_t line) {
  if (key == "geometry.preset") {
    if (value != "star" && value != "disk" && value != "custom")
      fail(line, "geometry.preset must be star, disk, or custom");
    c.geometry_preset = value;
  } else if (key == "geometry.coeffs") {
    auto coeffs = parse_double_list(value, line, key);
    if (!coeffs.empty() && coeffs.size() % 2 == 0)
      fail(line, "geometry.coeffs needs c0 followed by a/b pairs");
    c.geometry_coeffs = std::move(coeffs);
  } else if (key == "geometry.radius") {
    const double r = parse_double(value, line, key);
    if (!(r > 0.0)) fail(line, "geometry.radius must be positive");
    c.geometry_radius = r;
  } else if (key == "medium.n_re") {
    c.n_re = parse_double(value, line, key);
  } else if (key == "medium.n_im") {
    const double x = parse_double(value, line, key);
    if (x < 0.0) fail(line, "medium.n_im must be nonnegative");
    c.n_im = x;
  } else if (key == "medium.eta_re") {
    c.eta_re = parse_double(value, line, key);
  } else if (key == "medium.eta_im") {
    const double x = parse_double(value, line, key);
    if (x < 0.0) fail(line, "medium.eta_im must be nonnegative");
    c.eta_im = x;
  } else if (key == "wave.k") {
    const double x = parse_double(value, line, key);
    if (!(x > 0.0)) fail(line, "wave.k must be positive");
    c.k = x;
  } else if (key == "wave.directions") {
    const auto n = parse_unsigned(value, line, key);
    if (n < 2) fail(line, "wave.directions must be at least 2");
    c.directions = static_cast<std::size_t>(n);
  } else if (key == "quad.radial") {
    const auto n = parse_unsigned(value, line, key);
    if (n < 1) fail(line, "quad.radial must be at least 1");
    c.quad_radial = static_cast<std::size_t>(n);
  } else if (key == "quad.angular") {
    const auto n = parse_unsigned(value, line, key);
    if (n < 1) fail(line, "quad.angular must be at least 1");
    c.quad_angular = static_cast<std::size_t>(n);
  } else if (key == "noise.delta") {
    const double x = parse_double(value, line, key);
    if (!(x >= 0.0 && x < 1.0)) fail(line, "noise.delta must lie in [0, 1)");
    c.noise_delta = x;
  } else if (key == "noise.seed") {
    c.noise_seed = parse_unsigned(value, line, key);
  } else if (key == "noise.norm") {
    if (value != "spectral" && value != "frobenius")
      fail(line, "noise.norm must be spectral or frobenius");
    c.noise_norm = value;
  } else if (key == "filter.kind") {
    if (value != "tikhonov" && value != "landweber" && value != "glsm" &&
        value != "identity")
      fail(line, "filter.kind must be tikhonov, landweber, glsm, or identity");
    c.filter_kind = value;
  } else if (key == "filter.alpha") {
    const double x = parse_double(value, line, key);
    if (!(x > 0.0)) fail(line, "filter.alpha must be positive");
    c.filter_alpha = x;
  } else if (key == "filter.beta") {
    c.filter_beta = parse_double(value, line, key);
  } else if (key == "filter.p") {
    const double x = parse_double(value, line, key);
    if (!(x > 0.0 && x < 0.25)) fail(line, "filter.p must lie in (0, 1/4)");
    c.filter_p = x;
  } else if (key == "filter.auto") {
    c.filter_auto = parse_bool(value, line, key);
  } else if (key == "grid.x_min") {
    c.grid_x_min = parse_double(value, line, key);
  } else if (key == "grid.x_max") {
    c.grid_x_max = parse_double(value, line, key);
  } else if (key == "grid.y_min") {
    c.grid_y_min = parse_double(value, line, key);
  } else if (key == "grid.y_max") {
    c.grid_y_max = parse_double(value, line, key);
  } else if (key == "grid.nx") {
    const auto n = parse_unsigned(value, line, key);
    if (n < 2) fail(line, "grid.nx must be at least 2");
    c.grid_nx = static_cast<std::size_t>(n);
  } else if (key == "grid.ny") {
    const auto n = parse_unsigned(value, line, key);
    if (n < 2) fail(line, "grid.ny must be at least 2");
    c.grid_ny = static_cast<std::size_t>(n);
  } else if (key == "reconstruct.clamp_rel") {
    const double x = parse_double(value, line, key);
    if (x < 0.0) fail(line, "reconstruct.clamp_rel must be nonnegative");
    c.clamp_rel = x;
  } else if (key == "reconstruct.threshold") {
    const double x = parse_double(value, line, key);
    if (!(x > 0.0 && x < 1.0)) fail(line, "reconstruct.threshold must lie in (0, 1)");
    c.threshold = x;
  } else if (key == "output.prefix") {
    if (value.empty()) fail(line, "output.prefix must not be empty");
    c.output_prefix = value;
  } else if (key == "verify.dims") {
    auto dims = parse_size_list(value, line, key);
    if (dims.empty()) fail(line, "verify.dims must not be empty");
    for (std::size_t d : dims)
      if (d < 1) fail(line, "verify.dims entries must be at least 1");
    c.verify_dims = std::move(dims);
  } else if (key == "verify.deltas") {
    auto deltas = parse_double_list(value, line, key);
    if (deltas.empty()) fail(line, "verify.deltas must not be empty");
    for (double d : deltas)
      if (!(d > 0.0 && d < 0.25)) fail(line, "verify.deltas entries must lie in (0, 1/4)");
    c.verify_deltas = std::move(deltas);
  } else if (key == "verify.trials") {
    const auto n = parse_unsigned(value, line, key);
    if (n < 1) fail(line, "verify.trials must be at least 1");
    c.verify_trials = static_cast<std::size_t>(n);
  } else if (key == "verify.decay") {
    const double x = parse_double(value, line, key);
    if (!(x > 0.0 && x < 1.0)) fail(line, "verify.decay must lie in (0, 1)");
    c.verify_decay = x;
  } else {
    fail(line, "unknown key '" + key + "'");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail(lineno, "expected key = value");
    apply_key(c, key, value, lineno);
  }

  if (c.geometry_preset == "custom" && c.geometry_coeffs.empty())
    throw validation_error("geometry.preset = custom requires geometry.coeffs");
  if (!(c.grid_x_min < c.grid_x_max) || !(c.grid_y_min < c.grid_y_max))
    throw validation_error("grid extents must satisfy min < max");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig& c) {
  std::string out;
  auto put = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  auto put_d = [&put](const std::string& key, double v) { put(key, format_full(v)); };
  auto put_n = [&put](const std::string& key, unsigned long long v) {
    put(key, std::to_string(v));
  };

  put("geometry.preset", c.geometry_preset);
  std::string coeffs;
  for (std::size_t i = 0; i < c.geometry_coeffs.size(); ++i) {
    if (i) coeffs += ' ';
    coeffs += format_full(c.geometry_coeffs[i]);
  }
  put("geometry.coeffs", coeffs);
  put_d("geometry.radius", c.geometry_radius);
  put_d("medium.n_re", c.n_re);
  put_d("medium.n_im", c.n_im);
  put_d("medium.eta_re", c.eta_re);
  put_d("medium.eta_im", c.eta_im);
  put_d("wave.k", c.k);
  put_n("wave.directions", c.directions);
  put_n("quad.radial", c.quad_radial);
  put_n("quad.angular", c.quad_angular);
  put_d("noise.delta", c.noise_delta);
  put_n("noise.seed", c.noise_seed);
  put("noise.norm", c.noise_norm);
  put("filter.kind", c.filter_kind);
  put_d("filter.alpha", c.filter_alpha);
  put_d("filter.beta", c.filter_beta);
  put_d("filter.p", c.filter_p);
  put("filter.auto", c.filter_auto ? "true" : "false");
  put_d("grid.x_min", c.grid_x_min);
  put_d("grid.x_max", c.grid_x_max);
  put_d("grid.y_min", c.grid_y_min);
  put_d("grid.y_max", c.grid_y_max);
  put_n("grid.nx", c.grid_nx);
  put_n("grid.ny", c.grid_ny);
  put_d("reconstruct.clamp_rel", c.clamp_rel);
  put_d("reconstruct.threshold", c.threshold);
  put("output.prefix", c.output_prefix);
  std::string dims;
  for (std::size_t i = 0; i < c.verify_dims.size(); ++i) {
    if (i) dims += ' ';
    dims += std::to_string(c.verify_dims[i]);
  }
  put("verify.dims", dims);
  std::string deltas;
  for (std::size_t i = 0; i < c.verify_deltas.size(); ++i) {
    if (i) deltas += ' ';
    deltas += format_full(c.verify_deltas[i]);
  }
  put("verify.deltas", deltas);
  put_n("verify.trials", c.verify_trials);
  put_d("verify.decay", c.verify_decay);
  return out;
}

scattering::ScattererGeometry geometry_from(const RunConfig& c) {
  scattering::ScattererGeometry g;
  if (c.geometry_preset == "star") {
    g = scattering::star_preset();
  } else if (c.geometry_preset == "disk") {
    g = scattering::disk_preset(c.geometry_radius);
  } else if (c.geometry_preset == "custom") {
    if (c.geometry_coeffs.empty())
      throw validation_error("custom geometry requires coefficients");
    g.c0 = c.geometry_coeffs[0];
    g.a.clear();
    g.b.clear();
    for (std::size_t i = 1; i + 1 < c.geometry_coeffs.size(); i += 2) {
      g.a.push_back(c.geometry_coeffs[i]);
      g.b.push_back(c.geometry_coeffs[i + 1]);
    }
  } else {
    throw validation_error("unknown geometry preset '" + c.geometry_preset + "'");
  }
  scattering::validate_geometry(g);
  return g;
}

scattering::Medium medium_from(const RunConfig& c) {
  scattering::Medium m;
  m.n = Complex(c.n_re, c.n_im);
  m.eta = Complex(c.eta_re, c.eta_im);
  scattering::validate_medium(m);
  return m;
}

scattering::WaveConfig wave_from(const RunConfig& c) {
  scattering::WaveConfig w;
  w.k = c.k;
  w.num_directions = c.directions;
  scattering::validate_wave(w);
  return w;
}

scattering::QuadratureRule quadrature_from(const RunConfig& c) {
  return scattering::make_quadrature(c.quad_radial, c.quad_angular);
}

imaging::SamplingGrid grid_from(const RunConfig& c) {
  imaging::SamplingGrid g;
  g.x_min = c.grid_x_min;
  g.x_max = c.grid_x_max;
  g.y_min = c.grid_y_min;
  g.y_max = c.grid_y_max;
  g.nx = c.grid_nx;
  g.ny = c.grid_ny;
  imaging::validate_grid(g);
  return g;
}

void write_matrix(const CMatrix& M, const std::string& path) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (!std::isfinite(M(i, j).real()) || !std::isfinite(M(i, j).imag()))
        throw validation_error("write_matrix: non-finite entry");

  std::string out = "complex-matrix " + std::to_string(M.rows()) + " " +
                    std::to_string(M.cols()) + "\n";
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) out += ' ';
      out += format_full(M(i, j).real());
      out += ':';
      out += format_full(M(i, j).imag());
    }
    out += '\n';
  }
  atomic_write(path, out);
}

namespace {

Complex parse_matrix_entry(const std::string& tok, const std::string& path,
                           long long row) {
  const auto colon = tok.find(':');
  if (colon == std::string::npos || tok.find(':', colon + 1) != std::string::npos)
    throw io_error(path + ": malformed entry '" + tok + "' at row " + std::to_string(row));
  const std::string re_s = tok.substr(0, colon);
  const std::string im_s = tok.substr(colon + 1);
  auto parse_part = [&](const std::string& s) {
    if (s.empty())
      throw io_error(path + ": malformed entry '" + tok + "' at row " +
                     std::to_string(row));
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
      throw io_error(path + ": malformed entry '" + tok + "' at row " +
                     std::to_string(row));
    if (!std::isfinite(x))
      throw io_error(path + ": non-finite value at row " + std::to_string(row));
    return x;
  };
  const double re = parse_part(re_s);
  const double im = parse_part(im_s);
  return {re, im};
}

}  // namespace

CMatrix read_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");

  std::string header;
  if (!std::getline(in, header)) throw io_error(path + ": missing header");
  std::istringstream hs(header);
  std::string magic;
  long long rows = 0, cols = 0;
  if (!(hs >> magic >> rows >> cols) || magic != "complex-matrix" || rows < 1 || cols < 1)
    throw io_error(path + ": malformed header");
  std::string extra;
  if (hs >> extra) throw io_error(path + ": malformed header");
  if (rows > 100000 || cols > 100000)
    throw io_error(path + ": header dimensions too large");

  CMatrix M(rows, cols);
  std::string line;
  for (long long r = 0; r < rows; ++r) {
    if (!std::getline(in, line))
      throw io_error(path + ": unexpected end of file at row " + std::to_string(r + 1));
    std::istringstream ls(line);
    std::string tok;
    long long c = 0;
    while (ls >> tok) {
      if (c >= cols)
        throw io_error(path + ": row " + std::to_string(r + 1) +
                       " has more than " + std::to_string(cols) + " entries");
      M(r, c) = parse_matrix_entry(tok, path, r + 1);
      ++c;
    }
    if (c != cols)
      throw io_error(path + ": row " + std::to_string(r + 1) + " has " +
                     std::to_string(c) + " entries, expected " + std::to_string(cols));
  }
  while (std::getline(in, line))
    if (!trim(line).empty())
      throw io_error(path + ": trailing content after row " + std::to_string(rows));
  return M;
}

void write_field_csv(const imaging::IndicatorField& fld, const std::string& path) {
  imaging::validate_grid(fld.grid);
  if (fld.values.size() != static_cast<Eigen::Index>(fld.grid.size()))
    throw validation_error("write_field_csv: field size does not match the grid");

  std::string out;
  out += "# filter = " + fld.meta.filter + "\n";
  out += "# alpha = " + format_full(fld.meta.alpha) + "\n";
  out += "# delta = " + format_full(fld.meta.delta) + "\n";
  out += "# seed = " + std::to_string(fld.meta.seed) + "\n";
  out += "# k = " + format_full(fld.meta.k) + "\n";
  out += "x,y,w\n";
  for (std::size_t iy = 0; iy < fld.grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < fld.grid.nx; ++ix) {
      out += format_full(fld.grid.x(ix));
      out += ',';
      out += format_full(fld.grid.y(iy));
      out += ',';
      out += format_full(fld.values(static_cast<Eigen::Index>(fld.grid.index(ix, iy))));
      out += '\n';
    }
  }
  atomic_write(path, out);
}

void write_pgm(const imaging::IndicatorField& fld, const std::string& path) {
  imaging::validate_grid(fld.grid);
  if (fld.values.size() != static_cast<Eigen::Index>(fld.grid.size()))
    throw validation_error("write_pgm: field size does not match the grid");
  for (Eigen::Index p = 0; p < fld.values.size(); ++p)
    if (!(fld.values(p) >= 0.0 && fld.values(p) <= 1.0 + 1e-12))
      throw validation_error("write_pgm: field values must lie in [0, 1]");

  std::string out = "P5\n" + std::to_string(fld.grid.nx) + " " +
                    std::to_string(fld.grid.ny) + "\n255\n";
  out.reserve(out.size() + fld.grid.size());
  for (std::size_t iy = fld.grid.ny; iy-- > 0;) {
    for (std::size_t ix = 0; ix < fld.grid.nx; ++ix) {
      const double v = std::min(fld.values(static_cast<Eigen::Index>(fld.grid.index(ix, iy))), 1.0);
      out += static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v)));
    }
  }
  atomic_write(path, out);
}

void atomic_write(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write '" + tmp + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw io_error("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw io_error("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

}  // namespace regfm::io

#include "regfm/filters.hpp"

#include <cmath>
#include <string>

namespace regfm::filters {

namespace {

void require_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0)) throw validation_error(std::string(who) + ": alpha must be positive");
}

void require_valid(const FilterSpec& s, const char* who) {
  if (s.kind != FilterKind::Identity) require_alpha(s.alpha, who);
  if (s.kind == FilterKind::Landweber && s.m < 1)
    throw validation_error(std::string(who) + ": landweber iteration count must be at least 1");
}

}  // namespace

const char* kind_name(FilterKind k) {
  switch (k) {
    case FilterKind::Tikhonov: return "tikhonov";
    case FilterKind::Landweber: return "landweber";
    case FilterKind::GLSM: return "glsm";
    case FilterKind::Identity: return "identity";
  }
  return "unknown";
}

FilterKind kind_from_name(std::string_view name) {
  if (name == "tikhonov") return FilterKind::Tikhonov;
  if (name == "landweber") return FilterKind::Landweber;
  if (name == "glsm") return FilterKind::GLSM;
  if (name == "identity") return FilterKind::Identity;
  throw validation_error("unknown filter kind '" + std::string(name) +
                         "' (expected tikhonov, landweber, glsm, or identity)");
}

FilterSpec tikhonov(double alpha) {
  require_alpha(alpha, "tikhonov");
  return {FilterKind::Tikhonov, alpha, 0.0, 1};
}

FilterSpec landweber(double alpha, double beta) {
  require_alpha(alpha, "landweber");
  return {FilterKind::Landweber, alpha, beta, landweber_iterations(alpha)};
}

FilterSpec glsm(double alpha) {
  require_alpha(alpha, "glsm");
  return {FilterKind::GLSM, alpha, 0.0, 1};
}

FilterSpec identity() { return {FilterKind::Identity, 1.0, 0.0, 1}; }

FilterSpec resolve_beta(const FilterSpec& spec, double lambda_max) {
  if (spec.kind != FilterKind::Landweber || spec.beta > 0.0) return spec;
  if (!(lambda_max > 0.0))
    throw validation_error("resolve_beta: lambda_max must be positive");
  FilterSpec out = spec;
  out.beta = 1.0 / (2.0 * lambda_max * lambda_max);
  return out;
}

double filter_value(const FilterSpec& spec, double t) {
  if (!(t >= 0.0)) throw validation_error("filter_value: t must be nonnegative");
  require_valid(spec, "filter_value");
  switch (spec.kind) {
    case FilterKind::Tikhonov:
      return t * t / (t * t + spec.alpha);
    case FilterKind::Landweber: {
      if (!(spec.beta > 0.0))
        throw validation_error("filter_value: landweber requires beta > 0");
      const double bt2 = spec.beta * t * t;
      if (bt2 > 1.0)
        throw validation_error("filter_value: landweber requires beta t^2 <= 1");
      return 1.0 - std::pow(1.0 - bt2, static_cast<double>(spec.m));
    }
    case FilterKind::GLSM:
      return t / (spec.alpha + t);
    case FilterKind::Identity:
      return t > 0.0 ? 1.0 : 0.0;
  }
  throw validation_error("filter_value: unknown filter kind");
}

FilterConstants filter_constants(const FilterSpec& spec) {
  require_valid(spec, "filter_constants");
  switch (spec.kind) {
    case FilterKind::Tikhonov:
      return {1.0, 1.0 / (2.0 * std::sqrt(spec.alpha))};
    case FilterKind::Landweber:
      if (!(spec.beta > 0.0))
        throw validation_error("filter_constants: landweber requires beta > 0");
      return {1.0, std::sqrt(spec.beta * static_cast<double>(spec.m))};
    case FilterKind::GLSM:
      return {1.0, 1.0 / spec.alpha};
    case FilterKind::Identity:
      break;
  }
  throw validation_error("filter_constants: the identity filter has no spectral bound constants");
}

double select_alpha(FilterKind kind, double delta, const ParamRule& rule) {
  if (!(delta > 0.0 && delta < 1.0))
    throw validation_error("select_alpha: delta must lie in (0, 1)");
  if (!(rule.p > 0.0 && rule.p < 0.25))
    throw validation_error("select_alpha: p must lie in (0, 1/4)");
  switch (kind) {
    case FilterKind::Tikhonov:
      return 0.25 * std::pow(delta, 0.25 - rule.p);
    case FilterKind::Landweber:
      if (!(rule.operator_norm > 0.0))
        throw validation_error("select_alpha: landweber rule requires a positive operator norm");
      return std::pow(delta, 0.25 - rule.p) /
             (2.0 * rule.operator_norm * rule.operator_norm);
    case FilterKind::GLSM:
      return std::pow(delta, 0.5 * (0.25 - rule.p));
    case FilterKind::Identity:
      break;
  }
  throw validation_error("select_alpha: no parameter rule for the identity filter");
}

long long landweber_iterations(double alpha) {
  require_alpha(alpha, "landweber_iterations");
  const double m = std::ceil(1.0 / alpha);
  return m < 1.0 ? 1 : static_cast<long long>(m);
}

}  // namespace regfm::filters

#include "steklov/common.hpp"

#include <numbers>

namespace steklov {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::alpha_out_of_range: return "AlphaOutOfRange";
    case errc::dim_too_small: return "DimTooSmall";
    case errc::singular_evaluation: return "SingularEvaluation";
    case errc::weight_invalid: return "WeightInvalid";
    case errc::no_root_in_bracket: return "NoRootInBracket";
    case errc::ell_out_of_range: return "EllOutOfRange";
    case errc::degenerate_domain: return "DegenerateDomain";
    case errc::integrability_violation: return "IntegrabilityViolation";
    case errc::origin_on_boundary: return "OriginOnBoundary";
    case errc::integration_failure: return "IntegrationFailure";
    case errc::mesh_failure: return "MeshFailure";
    case errc::factorization_failure: return "FactorizationFailure";
    case errc::root_find_failure: return "RootFindFailure";
    case errc::monotone_cond_violated: return "MonotoneCondViolated";
    case errc::config_error: return "ConfigError";
  }
  return "UnknownError";
}

Error::Error(errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void fail(errc code, const std::string& message) { throw Error(code, message); }

double unit_ball_volume(int dim) {
  require(dim >= 1, errc::dim_too_small, "dimension must be at least 1");
  return std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

double unit_sphere_area(int dim) { return dim * unit_ball_volume(dim); }

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace steklov

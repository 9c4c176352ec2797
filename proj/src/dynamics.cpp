#include "vortexlab/dynamics.hpp"

#include <cmath>

namespace vortexlab {

std::string to_string(TimeScheme s) { return s == TimeScheme::ExplicitRK4 ? "explicit-ll-rk4" : "imex"; }

TimeScheme time_scheme_from_string(const std::string& s) {
  if (s == "explicit-ll-rk4" || s == "rk4") return TimeScheme::ExplicitRK4;
  if (s == "imex") return TimeScheme::Imex;
  throw ConfigError("unknown scheme: " + s);
}

double RunConfig::alpha() const {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw ConfigError("epsilon must lie in (0, 1/2]");
  if (alpha_override) {
    if (!(*alpha_override >= 0.0)) throw ConfigError("alpha must be non-negative");
    return *alpha_override;
  }
  if (!(alpha0 >= 0.0)) throw ConfigError("alpha0 must be non-negative");
  return alpha0 / std::log(1.0 / epsilon);
}

}  // namespace vortexlab

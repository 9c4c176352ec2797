#include "vortexlab/vortex.hpp"

#include <algorithm>
#include <limits>

#include "vortexlab/errors.hpp"

namespace vortexlab {

int VortexSet::total_degree() const {
  int s = 0;
  for (const auto& v : entries) s += v.d;
  return s;
}

VortexSet make_vortices(const std::vector<std::pair<Vec2, int>>& points) {
  VortexSet v;
  for (const auto& [a, d] : points) v.entries.push_back({a, d, 0.5 * d});
  return v;
}

double rho(const VortexSet& v) {
  if (v.empty()) throw ConfigError("rho of an empty vortex set");
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < v.size(); ++m) {
    for (std::size_t n = m + 1; n < v.size(); ++n) r = std::min(r, 0.5 * norm(v[m].a - v[n].a));
  }
  return r;
}

double rho(const VortexSet& v, const Grid2D& grid) {
  double r = rho(v);
  for (const auto& x : v) r = std::min(r, grid.distance_to_boundary(x.a));
  return r;
}

void validate(const VortexSet& v, const Grid2D& grid) {
  for (const auto& x : v) {
    if (x.d != 1 && x.d != -1) throw ConfigError("vortex degree must be +1 or -1");
    if (!(grid.distance_to_boundary(x.a) > 0.0)) throw ConfigError("vortex outside the domain");
  }
  if (!v.empty() && !(rho(v) > 0.0)) throw ConfigError("coincident vortices");
}

EpsilonSchedule::EpsilonSchedule(double epsilon, double alpha0) : eps_(epsilon), alpha0_(alpha0) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw ConfigError("epsilon must lie in (0, 1/2]");
  if (!(alpha0 >= 0.0)) throw ConfigError("alpha0 must be non-negative");
}

}  // namespace vortexlab

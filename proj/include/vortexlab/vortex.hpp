#pragma once

#include <cmath>
#include <vector>

#include "vortexlab/grid.hpp"
#include "vortexlab/vec.hpp"

namespace vortexlab {

/// One point vortex: position, winding number d = +-1, and gyro-coefficient
/// q in 1/2 + Z (set to d/2 in pure Ginzburg-Landau contexts).
struct Vortex {
  Vec2 a;
  int d{1};
  double q{0.5};
};

struct VortexSet {
  std::vector<Vortex> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  const Vortex& operator[](std::size_t n) const { return entries[n]; }
  Vortex& operator[](std::size_t n) { return entries[n]; }
  auto begin() const { return entries.begin(); }
  auto end() const { return entries.end(); }
  int total_degree() const;
};

/// Builds a set with q_n = d_n / 2.
VortexSet make_vortices(const std::vector<std::pair<Vec2, int>>& points);

/// min{ 1/2 min_{m != n} |a_m - a_n|, min_n dist(a_n, boundary) }.
/// Throws ConfigError on an empty set.
double rho(const VortexSet& v, const Grid2D& grid);
/// Free-plane variant: half the smallest pair distance (+inf for one vortex).
double rho(const VortexSet& v);

/// Validates the VortexSet invariants against a domain: positions strictly
/// inside, pairwise distinct, degrees +-1.
void validate(const VortexSet& v, const Grid2D& grid);

/// epsilon together with the damping alpha_eps = alpha0 / log(1/epsilon).
class EpsilonSchedule {
 public:
  EpsilonSchedule(double epsilon, double alpha0);
  double epsilon() const { return eps_; }
  double alpha0() const { return alpha0_; }
  double alpha() const { return alpha0_ / std::log(1.0 / eps_); }

 private:
  double eps_;
  double alpha0_;
};

}  // namespace vortexlab

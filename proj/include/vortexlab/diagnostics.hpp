#pragma once

#include <utility>
#include <vector>

#include "vortexlab/fields.hpp"
#include "vortexlab/renorm.hpp"
#include "vortexlab/vortex.hpp"

namespace vortexlab {

/// LLG: 1/2|grad m|^2 + m3^2/(2 eps^2);  GL: 1/2|grad u|^2 + (1-|u|^2)^2/(4 eps^2).
ScalarField energy_density(const DirectorField& m, double eps);
ScalarField energy_density(const ComplexField& u, double eps);

/// h^2 sum of node weights times density (node-centred fields only).
double integrate(const ScalarField& s);

/// Lattice energy: edge Dirichlet energy plus weighted node potential.
double total_energy(const DirectorField& m, double eps);
double total_energy(const ComplexField& u, double eps);

/// Pointwise <m, d1 m x d2 m>.
ScalarField vorticity(const DirectorField& m);
/// Signed solid angle swept by each plaquette, divided by h^2.
ScalarField lattice_vorticity(const DirectorField& m);

/// Plaquette Jacobian: half the circulation of the lattice supercurrent
/// |u_a||u_b| arg(u_b conj u_a) around the cell, divided by h^2.
ScalarField planar_jacobian(const ComplexField& u);
ScalarField planar_jacobian(const DirectorField& m);
/// Pointwise det(grad u) at nodes.
ScalarField pointwise_jacobian(const ComplexField& u);

/// (iu, grad u) with central differences.
VectorField supercurrent(const ComplexField& u);
VectorField supercurrent(const DirectorField& m);

/// L1 norms of J - m3 omega and omega - 3 m3 J - curl(m2 m3 grad m1 - m1 m3 grad m2).
std::pair<double, double> identity_residuals(const DirectorField& m);

/// Sum of wrapped phase differences of u sampled along a circle, / 2 pi.
/// Exact integer for fields without zeros near the contour.
int winding_number(const ComplexField& u, Vec2 center, double radius);

/// h^2-weighted mass of s over B_r(center); samples straddling the circle
/// get their covered area fraction. Throws ConfigError unless the ball
/// lies inside the domain.
double ball_mass(const ScalarField& s, Vec2 center, double r);

struct VortexReading {
  Vec2 position;
  int degree{0};
  double jacobian_mass{0.0};
  double vorticity_mass{0.0};
  /// vorticity_mass / 4 pi rounded to 1/2 + Z.
  double q_hat{0.0};
  /// (vorticity_mass - 2 pi degree) / 4 pi rounded to Z/2.
  double q_hat_shifted{0.0};
  double window_radius{0.0};
  /// Two clusters closer than min_sep were merged into this reading.
  bool merged{false};
};

struct LocateOptions {
  /// Minimal |J| mass of a cluster.
  double threshold{0.6 * 3.14159265358979323846};
  /// Merge / winding radius; <= 0 selects max(8h, 6 eps).
  double min_sep{0.0};
  double epsilon{0.0};
  /// Ball radius for the masses; <= 0 selects min_sep (shrunk to stay in the domain).
  double window_radius{0.0};
};

/// Clusters plaquettes of the lattice Jacobian `J` (cell-centred) and
/// returns |J|-weighted centroids refined by a quadratic fit of the peak.
/// Degrees come from the winding of `u` on a circle of radius min_sep.
std::vector<VortexReading> locate_vortices(const ScalarField& J, const ComplexField& u, const LocateOptions& opts = {});

/// Full reading of a GL state.
std::vector<VortexReading> read_vortices(const ComplexField& u, const LocateOptions& opts = {});
/// Full reading of an LLG state (vorticity masses from the lattice vorticity).
std::vector<VortexReading> read_vortices(const DirectorField& m, const LocateOptions& opts = {});

VortexSet to_vortex_set(const std::vector<VortexReading>& readings);

/// E - N (pi log(1/eps) + gamma_num(eps)) - W(a). Throws ConfigError when
/// the vortices are not resolved (rho(v) <= 2 eps).
double excess_energy(const ComplexField& u, double eps, const VortexSet& v, const RenormalizedEnergyModel& model);
double excess_energy(const DirectorField& m, double eps, const VortexSet& v, const RenormalizedEnergyModel& model);

/// Renormalized-energy model matching a grid's domain and boundary condition.
RenormalizedEnergyModel model_for(const Grid2D& grid, const VortexSet& boundary_source = {});

}  // namespace vortexlab

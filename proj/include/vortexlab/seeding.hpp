#pragma once

#include <vector>

#include "vortexlab/fields.hpp"
#include "vortexlab/vortex.hpp"

namespace vortexlab {

enum class GLProfileKind { Minimizer, Analytic };

struct SeedOptions {
  /// Core radius in units of epsilon.
  double c_core{3.0};
  /// Vortices generating the Dirichlet map g; empty means the seeded set.
  VortexSet boundary_source;
  /// GL amplitude: radial energy minimiser, or s / sqrt(s^2 + 2) with s = r/eps.
  GLProfileKind gl_profile{GLProfileKind::Minimizer};
};

/// Copy of v with q_n = polarity_n d_n / 2.
VortexSet with_polarity(const VortexSet& v, const std::vector<int>& polarity);

/// Micromagnetic vortices: m = (sin T m_*, cos T) with the cap profile
/// T(r) = pi/4 (1 - cos(pi min(r/(2 c eps), 1))) about each core, mirrored
/// to pi - T for polarity -1, and T = pi/2 away from the cores.
/// Requires rho(v) > 2 c eps and eps <= 1/2.
DirectorField seed_vortex_field(const GridPtr& grid, const VortexSet& v, double eps, const std::vector<int>& polarity,
                                const SeedOptions& opts = {});

/// GL vortices: u = prod_n f(|x - a_n|) m_*.
ComplexField seed_gl_field(const GridPtr& grid, const VortexSet& v, double eps, const SeedOptions& opts = {});

/// Degree-d vortex at `a` whose core carries a reversed bubble: T runs from
/// -pi at the centre to 0 at radius bubble_radius (a full wrap of the sphere),
/// then to pi/2 over c eps. Initial vorticity mass -2 pi d.
DirectorField seed_bubbling_field(const GridPtr& grid, Vec2 a, int d, double eps, double bubble_radius,
                                  const SeedOptions& opts = {});

struct PerturbationSpec {
  /// Energy to add.
  double target_surplus{1.0};
  /// Wavenumber k of psi = b(x) cos(k pi x) cos(k pi y), b vanishing on the boundary.
  int wavenumber{2};
};

/// Multiplies u by e^{i A psi} (rotates m about e3 by A psi) on free nodes
/// with A found by bisection so that the lattice energy grows by the
/// target. Returns A.
double inject_excess_energy(ComplexField& u, double eps, const PerturbationSpec& spec);
double inject_excess_energy(DirectorField& m, double eps, const PerturbationSpec& spec);

}  // namespace vortexlab

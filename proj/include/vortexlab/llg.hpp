#pragma once

#include <vector>

#include "vortexlab/dynamics.hpp"
#include "vortexlab/fields.hpp"

namespace vortexlab {

/// Tangential part of  L m - (m3/eps^2) e3  on free nodes (zero elsewhere),
/// with L the edge Laplacian.
DirectorField effective_field(const DirectorField& m, double eps);

/// (-m x f - alpha m x (m x f)) / (1 + alpha^2).
Vec3 llg_rhs_point(const Vec3& m, const Vec3& f, double alpha);
DirectorField llg_rhs(const DirectorField& m, double eps, double alpha);

/// 0.2 min(h^2/4, eps^2 (1+alpha^2)/(1+alpha)) for RK4; the IMEX splitting
/// drops the eps constraint.
double llg_stable_dt(double h, double eps, double alpha, TimeScheme scheme = TimeScheme::ExplicitRK4);

/// Integrates the LLG equation from m0. Dirichlet boundary nodes are never
/// written. Samples carry tracked vortices (vorticity masses from the lattice
/// vorticity), the lattice energy, the dissipation integral and the two
/// identity residuals; events hold the detected bubbling jumps.
Trajectory llg_run(const LLGConfig& cfg, const DirectorField& m0, DirectorField* final_state = nullptr);

/// Vorticity-mass jumps of a tracked vortex between quantized plateaus
/// (|omega/4pi - q| < 0.2 for q in 1/2 + Z) of size at least 0.8 * 4 pi,
/// with the position moving less than the reading window in between.
std::vector<BubblingEvent> detect_bubbling(const Trajectory& traj);

}  // namespace vortexlab

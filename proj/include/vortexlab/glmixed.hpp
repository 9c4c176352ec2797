#pragma once

#include <array>

#include "vortexlab/dynamics.hpp"
#include "vortexlab/fields.hpp"

namespace vortexlab {

/// (alpha - i)/(1 + alpha^2) (L u + u (1 - |u|^2)/eps^2) on free nodes; with
/// conservative_term = false the prefactor drops to alpha/(1 + alpha^2).
ComplexField gl_rhs(const ComplexField& u, double eps, double alpha, bool conservative_term = true);

/// 0.2 min(h^2/4 (1+alpha^2), eps^2) for RK4; the IMEX splitting drops the eps term.
double gl_stable_dt(double h, double eps, double alpha, TimeScheme scheme = TimeScheme::ExplicitRK4);

/// Integrates the mixed GL equation. Samples carry tracked vortices, the
/// lattice energy, the dissipation integral and the conservation residuals
/// over the step preceding the sample.
Trajectory gl_run(const GLConfig& cfg, const ComplexField& u0, ComplexField* final_state = nullptr);

/// L1 norms over nodes at least `margin` from the boundary of
///   d/dt (|u|^2-1)/2 - div j + alpha (iu, u_t),
///   d/dt J - curl div(grad u (x) grad u) + alpha curl (u_t, grad u),
///   d/dt e - div (grad u, u_t) + alpha |u_t|^2,
/// with time differences between u0 and u1 and spatial terms at the midpoint.
/// `ut_mid` (optional) replaces (u1 - u0)/dt as the time derivative.
std::array<double, 3> conservation_residuals(const ComplexField& u0, const ComplexField& u1, double dt, double eps,
                                             double alpha, const ComplexField* ut_mid = nullptr,
                                             double margin = 0.0);

}  // namespace vortexlab

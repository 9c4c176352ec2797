#pragma once

#include <vector>

#include "vortexlab/renorm.hpp"
#include "vortexlab/trajectory.hpp"
#include "vortexlab/vortex.hpp"

namespace vortexlab {

enum class OdeKind { LLG, GL };
std::string to_string(OdeKind k);
OdeKind ode_kind_from_string(const std::string& s);

/// Point-vortex state. LLG uses the gyro-coefficient 4 pi q_n, GL 2 pi d_n
/// (q is ignored).
struct OdeState {
  VortexSet vortices;
  double alpha0{0.0};
  RenormalizedEnergyModel model;
  OdeKind kind{OdeKind::LLG};
  double r_min{1e-3};
};

/// Velocities a_n' = -dW/da_n / (pi (alpha0 + g_n i)) with g_n = 4 q_n (LLG)
/// or 2 d_n (GL), R^2 = C and i the +90 degree rotation. Bounded-domain
/// models with automatic gradients use the identity route.
/// Throws ConfigError when alpha0 = 0 meets g_n = 0 or when rho(a) <= r_min.
std::vector<Vec2> ode_rhs(const OdeState& s);

/// Replaces q of one vortex at a given time.
struct QJump {
  double time{0.0};
  std::size_t vortex{0};
  double q{0.5};
};

struct OdeOptions {
  std::vector<QJump> jumps;
  /// Largest accepted step; <= 0 selects t_end / 200.
  double max_step{0.0};
  /// Record W and its directional derivative at every sample.
  bool record_energy{true};
};

/// Dormand-Prince 5(4) with per-step error <= tol (relative to 1 + |a|).
/// Stops at t_end, or with status Collision / BoundaryEscape once rho(a)
/// <= r_min or the step size underflows. q jumps restart the integrator.
Trajectory ode_integrate(const OdeState& s0, double t_end, double tol, const OdeOptions& opts = {});

/// max over samples of |dW/dt + pi alpha0 sum |a'|^2| / max(1, |dW/dt|),
/// using the recorded directional derivatives.
double energy_decay_check(const Trajectory& traj);

}  // namespace vortexlab

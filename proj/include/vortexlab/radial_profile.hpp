#pragma once

#include <vector>

namespace vortexlab {

/// Which core energy the radial profile minimises.
///  - GinzburgLandau: u = f(r) e^{i phi},  e = 1/2(f'^2 + f^2/r^2) + (1-f^2)^2/(4 eps^2)
///  - Micromagnetic:  m = (sin t(r) e^{i phi}, cos t(r)),
///                    e = 1/2(t'^2 + sin^2 t / r^2) + cos^2 t / (2 eps^2)
enum class CoreModel { GinzburgLandau, Micromagnetic };

/// Minimiser of the degree-one radial core energy on the unit disk, sampled
/// on a uniform radial mesh (boundary values: 0 at r = 0, 1 resp. pi/2 at r = 1).
struct RadialProfile {
  CoreModel model{CoreModel::GinzburgLandau};
  double epsilon{0.0};
  double dr{0.0};
  std::vector<double> values;
  /// Minimal energy 2 pi int_0^1 e r dr.
  double energy{0.0};

  /// Linear interpolation; constant continuation beyond r = 1.
  double operator()(double r) const;
};

/// Computes (and caches per model and epsilon) the minimiser on `nodes`
/// radial intervals by damped Newton iteration on the discrete energy.
const RadialProfile& radial_minimizer(CoreModel model, double epsilon, int nodes = 10000);

/// Core constant gamma_num(eps) = E_min(eps) - pi log(1/eps) on the unit disk.
double gamma_num(CoreModel model, double epsilon);

}  // namespace vortexlab

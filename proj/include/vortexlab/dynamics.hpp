#pragma once

#include <optional>
#include <string>

#include "vortexlab/diagnostics.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/trajectory.hpp"

namespace vortexlab {

enum class TimeScheme { ExplicitRK4, Imex };
std::string to_string(TimeScheme s);
TimeScheme time_scheme_from_string(const std::string& s);

/// Run parameters shared by the LLG and GL steppers.
struct RunConfig {
  double epsilon{0.05};
  /// alpha_eps = alpha0 / log(1/eps) unless alpha_override is set.
  double alpha0{1.0};
  /// Diagnostic mode: use this alpha_eps verbatim (e.g. 0 for pure precession).
  std::optional<double> alpha_override;
  /// <= 0 selects the scheme's stability bound.
  double dt{0.0};
  double t_end{1.0};
  TimeScheme scheme{TimeScheme::ExplicitRK4};
  /// Steps between recorded samples.
  int snapshot_stride{50};
  /// Collision / escape distance; <= 0 selects 8 eps.
  double r_min{0.0};
  /// GL only: keep the Schroedinger part (-i) of the prefactor.
  bool conservative_term{true};
  /// Generator of the Dirichlet data, forwarded to the excess-energy model.
  VortexSet boundary_source;
  bool record_excess_energy{false};
  /// Relative per-step energy increase that triggers a step-size halving.
  double balance_tolerance{1e-6};
  int max_dt_reductions{5};
  /// Write a .fld snapshot every `field_stride` samples into field_dir (0: never).
  std::string field_dir;
  int field_stride{0};
  LocateOptions locate;

  double alpha() const;
  double collision_radius() const { return r_min > 0.0 ? r_min : 8.0 * epsilon; }
};

using LLGConfig = RunConfig;
using GLConfig = RunConfig;

/// Raised on NaN blowup or exhausted step-size reductions; carries the
/// trajectory up to the last good sample.
class SimulationFailure : public NumericalError {
 public:
  SimulationFailure(const std::string& what, Trajectory partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

}  // namespace vortexlab

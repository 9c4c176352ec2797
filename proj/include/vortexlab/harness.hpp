#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortexlab/dynamics.hpp"
#include "vortexlab/motion.hpp"
#include "vortexlab/seeding.hpp"

namespace vortexlab {

struct ScenarioVortex {
  Vec2 a;
  int d{1};
  int polarity{1};
};

/// Experiment description. JSON keys mirror the field names; see
/// scenario_from_json for defaults.
struct Scenario {
  int schema{1};
  std::string name;
  /// "llg" or "gl".
  std::string model{"gl"};
  DomainSpec domain{DomainSpec::unit_disk()};
  BoundaryKind bc{BoundaryKind::Dirichlet};
  std::vector<ScenarioVortex> vortices;
  /// Generator of the Dirichlet data (empty: the seeded vortices).
  VortexSet boundary_source;
  std::vector<double> epsilons;
  /// Nodes per side for each epsilon.
  std::vector<int> grid_sizes;
  double alpha0{1.0};
  double t_end{0.25};
  /// dt = dt_factor h^2; <= 0 selects the scheme's stability bound.
  double dt_factor{0.0};
  TimeScheme scheme{TimeScheme::ExplicitRK4};
  int snapshot_stride{50};
  /// Collision / escape radius of the PDE runs (<= 0: 8 eps).
  double r_min{0.0};
  double c_core{3.0};
  /// Write a .fld snapshot every field_stride samples (0: never).
  int field_stride{0};
  /// Non-well-prepared data: phase modulation hitting this energy surplus.
  std::optional<PerturbationSpec> perturbation;
  /// LLG only: embed a reversed bubble of radius bubble_radius * eps in vortex 0.
  std::optional<double> bubble_radius;
  double ode_tol{1e-8};
  bool record_excess_energy{true};
  /// Renormalized-energy quadrature resolution used for W along ODE tracks.
  int renorm_resolution{129};
  std::string output;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Scenario& s);
/// Throws ConfigError on violated invariants (h <= eps/4, decreasing eps list, ...).
void validate(const Scenario& s);

std::vector<std::string> builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);

/// Distances between a PDE and an ODE track on their common time interval.
struct TrackComparison {
  /// Per vortex of the PDE track.
  std::vector<double> sup_distance;
  std::vector<double> l2_distance;
  /// ODE vortex matched to each PDE vortex (nearest at t = 0).
  std::vector<std::size_t> matching;
  double sup{0.0};
  double t_begin{0.0};
  double t_end{0.0};
  /// Two tracks came within 2 r_min of each other: identities may have swapped.
  bool identity_swap_risk{false};
};

/// Interpolates both tracks linearly onto the finer of the two time grids
/// (restricted to the overlap) and reports per-vortex sup and L2 distances.
/// Samples missing a vortex are skipped for that vortex.
TrackComparison compare_tracks(const Trajectory& pde, const Trajectory& ode, double r_min = 1e-3);

struct EventAlignment {
  double pde_time{0.0};
  double ode_jump_time{0.0};
  std::size_t vortex{0};
  int dq{0};
};

struct EpsilonResult {
  double epsilon{0.0};
  int grid{0};
  bool ok{false};
  std::string error;
  /// "config" or "numerical" when ok is false.
  std::string error_kind;
  std::string stop;
  double sup_distance{kMissing};
  double l2_distance{kMissing};
  /// LLG runs with events: the same ODE without q jumps.
  double sup_distance_no_jump{kMissing};
  double injected_amplitude{kMissing};
  std::vector<std::pair<double, double>> excess_energy;
  std::vector<BubblingEvent> events;
  std::vector<EventAlignment> alignment;
  double runtime_seconds{0.0};
  Trajectory pde;
  Trajectory ode;
};

struct ComparisonReport {
  std::string scenario;
  std::vector<EpsilonResult> runs;
  /// sup distances strictly decrease along the epsilon list (all runs ok).
  bool monotone{false};
  bool complete() const;
};

/// Seeds, simulates, tracks, integrates the matching ODE and compares, per
/// epsilon (sub-runs run concurrently on up to `threads` workers). When
/// sc.output is set, writes per-epsilon CSVs and report.json below it.
ComparisonReport run_scenario(const Scenario& sc, int threads = 1);

nlohmann::json to_json(const ComparisonReport& r);

}  // namespace vortexlab

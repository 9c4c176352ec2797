#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "vortexlab/diagnostics.hpp"
#include "vortexlab/vec.hpp"

namespace vortexlab {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

/// One vortex in one sample. PDE tracks fill the masses; ODE tracks fill the velocity.
struct TrackPoint {
  Vec2 position;
  int degree{1};
  double q{0.5};
  double j_mass{kMissing};
  double omega_mass{kMissing};
  double q_hat{kMissing};
  Vec2 velocity{kMissing, kMissing};
  /// Radius of the reading window (not persisted).
  double window{kMissing};
};

struct TrajectorySample {
  double time{0.0};
  std::vector<TrackPoint> vortices;
  double total_energy{kMissing};
  double excess_energy{kMissing};
  /// alpha_eps int_0^t int |d_t state|^2 accumulated up to this sample.
  double dissipated{kMissing};
  /// Renormalized energy of the tracked configuration (ODE tracks).
  double W{kMissing};
  /// Directional derivative of W along the recorded velocities (ODE tracks).
  double dW_dt{kMissing};
  std::array<double, 3> residuals{kMissing, kMissing, kMissing};
};

struct BubblingEvent {
  double t0{0.0};
  double t1{0.0};
  std::size_t vortex{0};
  Vec2 position;
  double window{0.0};
  /// Jump of the vorticity mass divided by 4 pi, rounded.
  int dq{0};
  double d_omega{0.0};
  double d_energy{0.0};
};

enum class StopReason { EndTime, Collision, BoundaryEscape, VortexLost };
std::string to_string(StopReason r);

struct Trajectory {
  std::string model;
  std::vector<TrajectorySample> samples;
  std::vector<BubblingEvent> events;
  StopReason stop{StopReason::EndTime};
  /// Step size in use when the run ended, and how often it was halved.
  double dt{0.0};
  int dt_reductions{0};
  /// Damping of an ODE track (missing for PDE runs).
  double alpha0{kMissing};

  bool empty() const { return samples.empty(); }
  std::vector<double> times() const;
  /// Positions of vortex n in every sample that has it.
  std::vector<Vec2> track(std::size_t n) const;
};

/// Reorders `current` so entry n is the reading nearest to previous[n]
/// (greedy over increasing distance); unmatched readings go last.
std::vector<TrackPoint> match_to_previous(const std::vector<TrackPoint>& previous, std::vector<TrackPoint> current);

TrackPoint to_track_point(const VortexReading& r);

/// Long-format CSV, one row per (sample, vortex); a sample without vortices
/// gets a single row with vortex = -1. Missing values are empty cells.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

void write_events_csv(const std::string& path, const std::vector<BubblingEvent>& events);

}  // namespace vortexlab

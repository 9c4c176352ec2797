#include "vortexlab/llg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "run_loop.hpp"
#include "vortexlab/stencil.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

class LLGOps {
 public:
  LLGOps(const RunConfig& cfg, const GridPtr& grid)
      : cfg_(cfg), grid_(grid), lap_(*grid), eps_(cfg.epsilon), alpha_(cfg.alpha()) {
    locate_ = cfg.locate;
    if (locate_.epsilon <= 0.0) locate_.epsilon = eps_;
  }

  void rhs(const std::vector<Vec3>& m, std::vector<Vec3>& out) const { field_rhs(m, out, true); }
  void diffusion_rhs(const std::vector<Vec3>& m, std::vector<Vec3>& out) const { field_rhs(m, out, false); }

  // Exact flow of the anisotropy term alone: m3^2 follows a logistic decay,
  // the planar part precesses about e3.
  void reaction(std::vector<Vec3>& m, double tau) const {
    const double s = 1.0 / ((1.0 + alpha_ * alpha_) * eps_ * eps_);
    const double k = alpha_ * s;
    const auto& free = lap_.free_nodes();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(free.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
      Vec3& v = m[free[p]];
      const double y0 = v[2] * v[2];
      auto y_at = [&](double t) {
        const double e = std::exp(-2.0 * k * t);
        return y0 * e / (1.0 - y0 + y0 * e);
      };
      const double y = y_at(tau);
      const double m3_mid = std::copysign(std::sqrt(y_at(0.5 * tau)), v[2]);
      const double phi = -tau * s * m3_mid;
      const double c = std::cos(phi), sn = std::sin(phi);
      const double planar = std::hypot(v[0], v[1]);
      const double scale = planar > 0.0 ? std::sqrt(std::max(0.0, 1.0 - y)) / planar : 0.0;
      v = {scale * (c * v[0] - sn * v[1]), scale * (sn * v[0] + c * v[1]), std::copysign(std::sqrt(y), v[2])};
    }
  }

  void project(std::vector<Vec3>& m) const {
    const auto& free = lap_.free_nodes();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(free.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
      Vec3& v = m[free[p]];
      v = (1.0 / norm(v)) * v;
    }
  }

  double energy(const DirectorField& m) const { return total_energy(m, eps_); }

  bool wants_previous() const { return false; }

  TrajectorySample sample(const DirectorField& m, const DirectorField*, double) const {
    TrajectorySample s;
    for (const auto& r : read_vortices(m, locate_)) s.vortices.push_back(to_track_point(r));
    const auto [r1, r2] = identity_residuals(m);
    s.residuals = {r1, r2, kMissing};
    if (cfg_.record_excess_energy && !s.vortices.empty()) {
      VortexSet v;
      for (const auto& p : s.vortices) v.entries.push_back({p.position, p.degree, p.q});
      try {
        s.excess_energy = excess_energy(m, eps_, v, model_for(*grid_, cfg_.boundary_source));
      } catch (const ConfigError&) {
        s.excess_energy = kMissing;
      }
    }
    return s;
  }

 private:
  void field_rhs(const std::vector<Vec3>& m, std::vector<Vec3>& out, bool anisotropy) const {
    const double inv = anisotropy ? 1.0 / (eps_ * eps_) : 0.0;
    const double alpha = alpha_;
    lap_.visit(m, [&](std::size_t k, Vec3 h) {
      const Vec3& v = m[k];
      h[2] -= inv * v[2];
      const Vec3 f = h - dot(h, v) * v;
      out[k] = llg_rhs_point(v, f, alpha);
    });
  }

  const RunConfig& cfg_;
  GridPtr grid_;
  EdgeLaplacian lap_;
  double eps_;
  double alpha_;
  LocateOptions locate_;
};

double round_half_odd(double x) { return std::round(x - 0.5) + 0.5; }

}  // namespace

DirectorField effective_field(const DirectorField& m, double eps) {
  const Grid2D& g = *m.grid;
  const EdgeLaplacian lap(g);
  std::vector<Vec3> lm(g.size());
  lap.apply(m.values, lm);
  DirectorField f(m.grid);
  for (std::size_t k : lap.free_nodes()) {
    Vec3 h = lm[k];
    h[2] -= m[k][2] / (eps * eps);
    f[k] = h - dot(h, m[k]) * m[k];
  }
  return f;
}

Vec3 llg_rhs_point(const Vec3& m, const Vec3& f, double alpha) {
  const Vec3 mf = cross(m, f);
  return (1.0 / (1.0 + alpha * alpha)) * ((-1.0) * mf - alpha * cross(m, mf));
}

DirectorField llg_rhs(const DirectorField& m, double eps, double alpha) {
  const DirectorField f = effective_field(m, eps);
  DirectorField out(m.grid);
  const Grid2D& g = *m.grid;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.is_free(k)) out[k] = llg_rhs_point(m[k], f[k], alpha);
  }
  return out;
}

double llg_stable_dt(double h, double eps, double alpha, TimeScheme scheme) {
  const double diffusive = h * h / 4.0;
  if (scheme == TimeScheme::Imex) return 0.2 * diffusive;
  return 0.2 * std::min(diffusive, eps * eps * (1.0 + alpha * alpha) / (1.0 + alpha));
}

Trajectory llg_run(const LLGConfig& cfg, const DirectorField& m0, DirectorField* final_state) {
  const double alpha = cfg.alpha();
  if (max_unit_deviation(m0) > 1e-10) throw ConfigError("initial director is not unit length");
  const LLGOps ops(cfg, m0.grid);
  detail::RunLoop<Vec3, LLGOps> loop(cfg, ops, m0, "llg", llg_stable_dt(m0.grid->h(), cfg.epsilon, alpha, cfg.scheme));
  Trajectory traj = loop.run(final_state);
  traj.events = detect_bubbling(traj);
  return traj;
}

std::vector<BubblingEvent> detect_bubbling(const Trajectory& traj) {
  std::vector<BubblingEvent> events;
  std::size_t count = 0;
  for (const auto& s : traj.samples) count = std::max(count, s.vortices.size());
  for (std::size_t n = 0; n < count; ++n) {
    // Last plateau sample: index into traj.samples.
    std::ptrdiff_t anchor = -1;
    double anchor_q = 0.0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
      const auto& s = traj.samples[i];
      if (n >= s.vortices.size()) continue;
      const TrackPoint& p = s.vortices[n];
      if (std::isnan(p.omega_mass)) continue;
      const double x = p.omega_mass / (4.0 * kPi);
      const double q = round_half_odd(x);
      if (std::abs(x - q) >= 0.2) continue;
      if (anchor >= 0 && q != anchor_q) {
        const auto& s0 = traj.samples[static_cast<std::size_t>(anchor)];
        const TrackPoint& p0 = s0.vortices[n];
        const double d_omega = p.omega_mass - p0.omega_mass;
        const double window = std::isnan(p0.window) ? kMissing : p0.window;
        const bool continuous = std::isnan(window) || norm(p.position - p0.position) <= window;
        if (std::abs(d_omega) >= 0.8 * 4.0 * kPi && continuous) {
          BubblingEvent e;
          e.t0 = s0.time;
          e.t1 = s.time;
          e.vortex = n;
          e.position = p.position;
          e.window = window;
          e.dq = static_cast<int>(std::lround(d_omega / (4.0 * kPi)));
          e.d_omega = d_omega;
          e.d_energy = s.total_energy - s0.total_energy;
          events.push_back(e);
        }
      }
      anchor = static_cast<std::ptrdiff_t>(i);
      anchor_q = q;
    }
  }
  std::sort(events.begin(), events.end(), [](const BubblingEvent& a, const BubblingEvent& b) { return a.t1 < b.t1; });
  return events;
}

}  // namespace vortexlab

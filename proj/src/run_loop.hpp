#pragma once

// Stepping chassis shared by llg_run and gl_run.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "vortexlab/dynamics.hpp"
#include "vortexlab/snapshot.hpp"
#include "vortexlab/stencil.hpp"

namespace vortexlab::detail {

inline double sqnorm(const Vec3& v) { return dot(v, v); }
inline double sqnorm(const cplx& z) { return std::norm(z); }

// Ops must provide:
//   void rhs(const std::vector<T>& u, std::vector<T>& out) const;       full right-hand side
//   void diffusion_rhs(const std::vector<T>& u, std::vector<T>& out) const;
//   void reaction(std::vector<T>& u, double tau) const;                 exact local solve
//   void project(std::vector<T>& u) const;
//   double energy(const NodeField<T>& u) const;
//   TrajectorySample sample(const NodeField<T>& u, const NodeField<T>* prev, double dt_prev) const;
//   bool wants_previous() const;
template <class T, class Ops>
class RunLoop {
 public:
  RunLoop(const RunConfig& cfg, const Ops& ops, const NodeField<T>& u0, std::string model, double dt_auto)
      : cfg_(cfg), ops_(ops), state_(u0), model_(std::move(model)) {
    const Grid2D& g = *u0.grid;
    const EdgeLaplacian lap(g);
    free_ = lap.free_nodes();
    h2_ = g.h() * g.h();
    for (std::size_t k : free_) w_.push_back(g.node_weight(k) * h2_);
    alpha_ = cfg.alpha();
    dt_ = cfg.dt > 0.0 ? cfg.dt : dt_auto;
    if (!(cfg.t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (cfg.snapshot_stride < 1) throw ConfigError("snapshot_stride must be at least 1");
  }

  Trajectory run(NodeField<T>* final_state) {
    traj_.model = model_;
    energy_ = ops_.energy(state_);
    record(nullptr, 0.0);
    initial_count_ = traj_.samples.back().vortices.size();
    long step = 0;
    const double t_end = cfg_.t_end;
    NodeField<T> prev;
    double dt_prev = 0.0;
    while (t_ < t_end * (1.0 - 1e-12)) {
      const bool sample_next = (step + 1) % cfg_.snapshot_stride == 0;
      const double tau = std::min(dt_, t_end - t_);
      if (sample_next && ops_.wants_previous()) prev = state_;
      advance(tau);
      ++step;
      dt_prev = tau;
      const bool last = t_ >= t_end * (1.0 - 1e-12);
      if (sample_next || last) {
        record(sample_next && ops_.wants_previous() ? &prev : nullptr, dt_prev);
        if (check_stop()) break;
      }
    }
    traj_.dt = dt_;
    traj_.dt_reductions = reductions_;
    if (final_state) *final_state = state_;
    return traj_;
  }

 private:
  double weighted_sqnorm(const std::vector<T>& k) const {
    double acc = 0.0;
    for (std::size_t p = 0; p < free_.size(); ++p) acc += w_[p] * sqnorm(k[free_[p]]);
    return acc;
  }

  void axpy(std::vector<T>& out, const std::vector<T>& x, double a, const std::vector<T>& y) const {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(free_.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
      const std::size_t k = free_[p];
      out[k] = x[k] + a * y[k];
    }
  }

  // Classical RK4 on `rhs_fn`, projecting every stage; returns the quadrature
  // of |d_t u|^2 over the step.
  template <class Rhs>
  double rk4(std::vector<T>& u, double tau, Rhs rhs_fn) {
    k1_.resize(u.size());
    k2_.resize(u.size());
    k3_.resize(u.size());
    k4_.resize(u.size());
    tmp_ = u;
    rhs_fn(u, k1_);
    axpy(tmp_, u, 0.5 * tau, k1_);
    ops_.project(tmp_);
    rhs_fn(tmp_, k2_);
    axpy(tmp_, u, 0.5 * tau, k2_);
    ops_.project(tmp_);
    rhs_fn(tmp_, k3_);
    axpy(tmp_, u, tau, k3_);
    ops_.project(tmp_);
    rhs_fn(tmp_, k4_);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(free_.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
      const std::size_t k = free_[p];
      u[k] = u[k] + (tau / 6.0) * (k1_[k] + 2.0 * k2_[k] + 2.0 * k3_[k] + k4_[k]);
    }
    ops_.project(u);
    return tau * (weighted_sqnorm(k1_) + 2.0 * weighted_sqnorm(k2_) + 2.0 * weighted_sqnorm(k3_) +
                  weighted_sqnorm(k4_)) / 6.0;
  }

  double try_step(std::vector<T>& u, double tau) {
    if (cfg_.scheme == TimeScheme::ExplicitRK4) {
      return rk4(u, tau, [&](const std::vector<T>& x, std::vector<T>& out) { ops_.rhs(x, out); });
    }
    const std::vector<T> before = u;
    ops_.reaction(u, 0.5 * tau);
    rk4(u, tau, [&](const std::vector<T>& x, std::vector<T>& out) { ops_.diffusion_rhs(x, out); });
    ops_.reaction(u, 0.5 * tau);
    ops_.project(u);
    double acc = 0.0;
    for (std::size_t p = 0; p < free_.size(); ++p) {
      const std::size_t k = free_[p];
      acc += w_[p] * sqnorm((1.0 / tau) * (u[k] - before[k]));
    }
    return tau * acc;
  }

  void advance(double tau) {
    for (;;) {
      NodeField<T> trial = state_;
      const double dissipation = alpha_ * try_step(trial.values, tau);
      const double e_new = ops_.energy(trial);
      const bool finite = std::isfinite(e_new) && std::isfinite(dissipation);
      const bool balanced = alpha_ <= 0.0 || e_new <= energy_ + cfg_.balance_tolerance * std::abs(energy_);
      if (finite && balanced) {
        state_ = std::move(trial);
        energy_ = e_new;
        dissipated_ += dissipation;
        t_ += tau;
        return;
      }
      if (++reductions_ > cfg_.max_dt_reductions) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s at t = %.6g after %d step-size reductions",
                      finite ? "energy balance violated" : "non-finite state", t_, cfg_.max_dt_reductions);
        traj_.dt = dt_;
        traj_.dt_reductions = reductions_;
        throw SimulationFailure(buf, traj_);
      }
      dt_ *= 0.5;
      tau = std::min(tau, dt_);
    }
  }

  void record(const NodeField<T>* prev, double dt_prev) {
    TrajectorySample s = ops_.sample(state_, prev, dt_prev);
    s.time = t_;
    s.total_energy = energy_;
    s.dissipated = dissipated_;
    if (!traj_.samples.empty()) s.vortices = match_to_previous(traj_.samples.back().vortices, std::move(s.vortices));
    traj_.samples.push_back(std::move(s));
    if (cfg_.field_stride > 0 && !cfg_.field_dir.empty() &&
        (traj_.samples.size() - 1) % static_cast<std::size_t>(cfg_.field_stride) == 0) {
      std::filesystem::create_directories(cfg_.field_dir);
      char name[64];
      std::snprintf(name, sizeof name, "%s_%05zu.fld", model_.c_str(), traj_.samples.size() - 1);
      write_field((std::filesystem::path(cfg_.field_dir) / name).string(), state_, t_, cfg_.epsilon);
    }
  }

  bool check_stop() {
    const auto& v = traj_.samples.back().vortices;
    if (initial_count_ == 0) return false;
    const Grid2D& g = *state_.grid;
    const double r_min = cfg_.collision_radius();
    for (std::size_t n = 0; n < v.size(); ++n) {
      for (std::size_t m = n + 1; m < v.size(); ++m) {
        if (0.5 * norm(v[n].position - v[m].position) < r_min) {
          traj_.stop = StopReason::Collision;
          return true;
        }
      }
      if (g.distance_to_boundary(v[n].position) < r_min) {
        traj_.stop = StopReason::BoundaryEscape;
        return true;
      }
    }
    if (v.size() < initial_count_) {
      traj_.stop = StopReason::VortexLost;
      return true;
    }
    return false;
  }

  const RunConfig& cfg_;
  const Ops& ops_;
  NodeField<T> state_;
  std::string model_;
  std::vector<std::size_t> free_;
  std::vector<double> w_;
  std::vector<T> k1_, k2_, k3_, k4_, tmp_;
  double h2_{0.0};
  double alpha_{0.0};
  double dt_{0.0};
  double t_{0.0};
  double energy_{0.0};
  double dissipated_{0.0};
  int reductions_{0};
  std::size_t initial_count_{0};
  Trajectory traj_;
};

}  // namespace vortexlab::detail

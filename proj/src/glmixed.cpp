#include "vortexlab/glmixed.hpp"

#include <algorithm>
#include <cmath>

#include "run_loop.hpp"
#include "vortexlab/stencil.hpp"

namespace vortexlab {

namespace {

cplx prefactor(double alpha, bool conservative) {
  const double s = 1.0 / (1.0 + alpha * alpha);
  return conservative ? cplx{alpha * s, -s} : cplx{alpha * s, 0.0};
}

class GLOps {
 public:
  GLOps(const RunConfig& cfg, const GridPtr& grid)
      : cfg_(cfg),
        grid_(grid),
        lap_(*grid),
        eps_(cfg.epsilon),
        alpha_(cfg.alpha()),
        c_(prefactor(alpha_, cfg.conservative_term)) {
    locate_ = cfg.locate;
    if (locate_.epsilon <= 0.0) locate_.epsilon = eps_;
  }

  void rhs(const std::vector<cplx>& u, std::vector<cplx>& out) const { field_rhs(u, out, true); }
  void diffusion_rhs(const std::vector<cplx>& u, std::vector<cplx>& out) const { field_rhs(u, out, false); }

  // Exact flow of u_t = c u (1 - |u|^2)/eps^2: |u|^2 is logistic, the phase
  // integrates Im(c) (1 - |u|^2)/eps^2.
  void reaction(std::vector<cplx>& u, double tau) const {
    const double k = 2.0 * c_.real() / (eps_ * eps_);
    const double b = c_.imag() / (eps_ * eps_);
    const auto& free = lap_.free_nodes();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(free.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
      cplx& z = u[free[p]];
      const double r0 = std::norm(z);
      if (r0 == 0.0) continue;
      double r, deficit;
      if (std::abs(k * tau) > 1e-12) {
        const double ls = std::log1p(r0 * std::expm1(k * tau));
        r = r0 * std::exp(k * tau - ls);
        deficit = tau - ls / k;
      } else {
        r = r0;
        deficit = (1.0 - r0) * tau;
      }
      z *= std::sqrt(r / r0) * std::polar(1.0, b * deficit);
    }
  }

  void project(std::vector<cplx>&) const {}

  double energy(const ComplexField& u) const { return total_energy(u, eps_); }

  bool wants_previous() const { return true; }

  TrajectorySample sample(const ComplexField& u, const ComplexField* prev, double dt) const {
    TrajectorySample s;
    for (const auto& r : read_vortices(u, locate_)) s.vortices.push_back(to_track_point(r));
    if (prev && dt > 0.0) s.residuals = conservation_residuals(*prev, u, dt, eps_, alpha_, nullptr, 4.0 * grid_->h());
    if (cfg_.record_excess_energy && !s.vortices.empty()) {
      VortexSet v;
      for (const auto& p : s.vortices) v.entries.push_back({p.position, p.degree, p.q});
      try {
        s.excess_energy = excess_energy(u, eps_, v, model_for(*grid_, cfg_.boundary_source));
      } catch (const ConfigError&) {
        s.excess_energy = kMissing;
      }
    }
    return s;
  }

 private:
  void field_rhs(const std::vector<cplx>& u, std::vector<cplx>& out, bool reaction_term) const {
    const double inv = reaction_term ? 1.0 / (eps_ * eps_) : 0.0;
    const double cr = c_.real(), ci = c_.imag();
    lap_.visit(u, [&](std::size_t k, const cplx& lu) {
      const cplx z = u[k];
      const cplx g = lu + inv * (1.0 - std::norm(z)) * z;
      out[k] = cplx(cr * g.real() - ci * g.imag(), cr * g.imag() + ci * g.real());
    });
  }

  const RunConfig& cfg_;
  GridPtr grid_;
  EdgeLaplacian lap_;
  double eps_;
  double alpha_;
  cplx c_;
  LocateOptions locate_;
};

double re_dot(cplx a, cplx b) { return (a * std::conj(b)).real(); }

}  // namespace

ComplexField gl_rhs(const ComplexField& u, double eps, double alpha, bool conservative_term) {
  const Grid2D& g = *u.grid;
  const EdgeLaplacian lap(g);
  std::vector<cplx> lu(g.size());
  lap.apply(u.values, lu);
  const cplx c = prefactor(alpha, conservative_term);
  ComplexField out(u.grid);
  for (std::size_t k : lap.free_nodes()) out[k] = c * (lu[k] + (1.0 - std::norm(u[k])) / (eps * eps) * u[k]);
  return out;
}

double gl_stable_dt(double h, double eps, double alpha, TimeScheme scheme) {
  const double diffusive = h * h / 4.0 * (1.0 + alpha * alpha);
  if (scheme == TimeScheme::Imex) return 0.2 * diffusive;
  return 0.2 * std::min(diffusive, eps * eps);
}

Trajectory gl_run(const GLConfig& cfg, const ComplexField& u0, ComplexField* final_state) {
  const double alpha = cfg.alpha();
  if (!cfg.conservative_term && !(alpha > 0.0)) throw ConfigError("the dissipative-only mode needs alpha > 0");
  const GLOps ops(cfg, u0.grid);
  detail::RunLoop<cplx, GLOps> loop(cfg, ops, u0, "gl", gl_stable_dt(u0.grid->h(), cfg.epsilon, alpha, cfg.scheme));
  return loop.run(final_state);
}

std::array<double, 3> conservation_residuals(const ComplexField& u0, const ComplexField& u1, double dt, double eps,
                                             double alpha, const ComplexField* ut_mid, double margin) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  if (u0.grid != u1.grid) throw ConfigError("snapshots live on different grids");
  const GridPtr grid = u0.grid;
  const Grid2D& g = *grid;
  ComplexField um(grid), ut(grid);
  for (std::size_t k = 0; k < g.size(); ++k) {
    um[k] = 0.5 * (u0[k] + u1[k]);
    ut[k] = ut_mid ? (*ut_mid)[k] : (u1[k] - u0[k]) / dt;
  }

  const NodeField<double> div_j = divergence(supercurrent(um));

  // curl div (grad u (x) grad u), row by row.
  const TensorField T = stress_energy(um);
  VectorField row_x(grid), row_y(grid), div_t(grid), v_damp(grid), e_flux(grid);
  for (std::size_t k = 0; k < g.size(); ++k) {
    row_x[k] = {T[k].xx, T[k].xy};
    row_y[k] = {T[k].xy, T[k].yy};
  }
  const NodeField<double> dtx = divergence(row_x), dty = divergence(row_y);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      const std::size_t k = g.idx(i, j);
      div_t[k] = {dtx[k], dty[k]};
      const cplx ux = partial(um, i, j, 0), uy = partial(um, i, j, 1);
      v_damp[k] = {re_dot(ut[k], ux), re_dot(ut[k], uy)};
      e_flux[k] = {re_dot(ux, ut[k]), re_dot(uy, ut[k])};
    }
  }
  const NodeField<double> curl_div_t = curl(div_t), curl_damp = curl(v_damp), div_flux = divergence(e_flux);

  const ScalarField j0 = pointwise_jacobian(u0), j1 = pointwise_jacobian(u1);
  const ScalarField e0 = energy_density(u0, eps), e1 = energy_density(u1, eps);

  std::array<double, 3> out{0.0, 0.0, 0.0};
  const double h2 = g.h() * g.h();
  for (std::size_t k : g.mask_nodes()) {
    if (margin > 0.0 && g.distance_to_boundary(g.position(k)) < margin) continue;
    const double w = g.node_weight(k) * h2;
    const double mass = 0.5 * (std::norm(u1[k]) - std::norm(u0[k])) / dt - div_j[k] +
                        alpha * re_dot(cplx{0.0, 1.0} * um[k], ut[k]);
    const double jac = (j1.values[k] - j0.values[k]) / dt - curl_div_t[k] + alpha * curl_damp[k];
    const double en = (e1.values[k] - e0.values[k]) / dt - div_flux[k] + alpha * std::norm(ut[k]);
    out[0] += w * std::abs(mass);
    out[1] += w * std::abs(jac);
    out[2] += w * std::abs(en);
  }
  return out;
}

}  // namespace vortexlab

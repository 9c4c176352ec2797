#include "vortexlab/poisson.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vortexlab/errors.hpp"

namespace vortexlab {

EdgeSystem::EdgeSystem(GridPtr g) : grid(std::move(g)) {
  const std::size_t n = grid->size();
  wx.assign(n, 0.0);
  wy.assign(n, 0.0);
  gx.assign(n, 0.0);
  gy.assign(n, 0.0);
  fixed.assign(n, 0);
  for (int j = 0; j < grid->ny(); ++j) {
    for (int i = 0; i < grid->nx(); ++i) {
      wx[grid->idx(i, j)] = grid->edge_weight(i, j, true);
      wy[grid->idx(i, j)] = grid->edge_weight(i, j, false);
    }
  }
}

namespace {

// Visits the up to four edges of node (i,j): callback(neighbour, weight, target)
// where target is the prescribed difference phi_neighbour - phi_node.
template <class F>
void for_each_edge(const EdgeSystem& s, int i, int j, F&& f) {
  const Grid2D& g = *s.grid;
  const std::size_t k = g.idx(i, j);
  if (i + 1 < g.nx() && s.wx[k] > 0) f(g.idx(i + 1, j), s.wx[k], s.gx[k]);
  if (i > 0) {
    const std::size_t l = g.idx(i - 1, j);
    if (s.wx[l] > 0) f(l, s.wx[l], -s.gx[l]);
  }
  if (j + 1 < g.ny() && s.wy[k] > 0) f(g.idx(i, j + 1), s.wy[k], s.gy[k]);
  if (j > 0) {
    const std::size_t l = g.idx(i, j - 1);
    if (s.wy[l] > 0) f(l, s.wy[l], -s.gy[l]);
  }
}

bool fft_eligible(const EdgeSystem& s, bool& dirichlet) {
  const Grid2D& g = *s.grid;
  if (g.domain() != DomainKind::Rectangle) return false;
  bool any_fixed = false;
  bool boundary_fixed = true;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (s.fixed[k]) any_fixed = true;
    if (g.is_boundary(k) != (s.fixed[k] != 0)) boundary_fixed = false;
  }
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.idx(i, j);
      if (s.wx[k] != g.edge_weight(i, j, true) || s.wy[k] != g.edge_weight(i, j, false)) return false;
    }
  }
  if (!any_fixed) {
    dirichlet = false;
    return true;
  }
  dirichlet = true;
  return boundary_fixed;
}

std::vector<double> rhs_vector(const EdgeSystem& s, const std::vector<double>& phi) {
  const Grid2D& g = *s.grid;
  std::vector<double> b(g.size(), 0.0);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.idx(i, j);
      if (!g.in_mask(k) || s.fixed[k]) continue;
      double acc = 0.0;
      for_each_edge(s, i, j, [&](std::size_t nb, double w, double target) {
        acc -= w * target;
        if (s.fixed[nb]) acc += w * phi[nb];
      });
      if (!s.source.empty()) acc += s.source[k];
      b[k] = acc;
    }
  }
  return b;
}

SolveReport solve_fft(const EdgeSystem& s, std::vector<double>& phi, bool dirichlet) {
  const Grid2D& g = *s.grid;
  const std::vector<double> b = rhs_vector(s, phi);
  const int off = dirichlet ? 1 : 0;
  const int mx = g.nx() - 2 * off;
  const int my = g.ny() - 2 * off;
  std::vector<double> buf(static_cast<std::size_t>(mx) * my);
  for (int j = 0; j < my; ++j) {
    for (int i = 0; i < mx; ++i) {
      const std::size_t k = g.idx(i + off, j + off);
      buf[static_cast<std::size_t>(j) * mx + i] = dirichlet ? b[k] : b[k] / g.node_weight(k);
    }
  }
  const fftw_r2r_kind kind = dirichlet ? FFTW_RODFT00 : FFTW_REDFT00;
  fftw_plan plan = fftw_plan_r2r_2d(my, mx, buf.data(), buf.data(), kind, kind, FFTW_ESTIMATE);
  fftw_execute(plan);
  const double pi = std::numbers::pi;
  auto eig = [&](int k, int m) {
    return dirichlet ? 2.0 - 2.0 * std::cos(pi * (k + 1) / (m + 1)) : 2.0 - 2.0 * std::cos(pi * k / (m - 1));
  };
  for (int j = 0; j < my; ++j) {
    const double ey = eig(j, my);
    for (int i = 0; i < mx; ++i) {
      const double lam = eig(i, mx) + ey;
      double& c = buf[static_cast<std::size_t>(j) * mx + i];
      c = lam > 1e-14 ? c / lam : 0.0;
    }
  }
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  const double norm = dirichlet ? 4.0 * (mx + 1) * (my + 1) : 4.0 * (mx - 1) * (my - 1);
  for (int j = 0; j < my; ++j) {
    for (int i = 0; i < mx; ++i) phi[g.idx(i + off, j + off)] = buf[static_cast<std::size_t>(j) * mx + i] / norm;
  }
  SolveReport rep;
  rep.used_fft = true;
  return rep;
}

}  // namespace

void apply_edge_operator(const EdgeSystem& s, const std::vector<double>& phi, std::vector<double>& out) {
  const Grid2D& g = *s.grid;
  out.assign(g.size(), 0.0);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.idx(i, j);
      if (!g.in_mask(k) || s.fixed[k]) continue;
      double acc = 0.0;
      for_each_edge(s, i, j, [&](std::size_t nb, double w, double) { acc += w * (phi[k] - phi[nb]); });
      out[k] = acc;
    }
  }
}

SolveReport solve_edge_system(const EdgeSystem& s, std::vector<double>& phi, const SolverOptions& opts) {
  const Grid2D& g = *s.grid;
  if (phi.size() != g.size()) phi.resize(g.size(), 0.0);

  bool dirichlet = false;
  SolveReport rep;
  if (opts.allow_fft && fft_eligible(s, dirichlet)) {
    rep = solve_fft(s, phi, dirichlet);
  } else {
    // Unknowns: masked, non-fixed nodes with at least one live edge.
    std::vector<double> diag(g.size(), 0.0);
    std::vector<std::size_t> unknowns;
    bool any_fixed = false;
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        const std::size_t k = g.idx(i, j);
        if (!g.in_mask(k)) continue;
        if (s.fixed[k]) {
          any_fixed = true;
          continue;
        }
        double d = 0.0;
        for_each_edge(s, i, j, [&](std::size_t, double w, double) { d += w; });
        diag[k] = d;
        if (d > 0) unknowns.push_back(k);
      }
    }
    EdgeSystem work = s;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g.in_mask(k) && !s.fixed[k] && diag[k] == 0.0) work.fixed[k] = 1;
    }
    const bool singular = !any_fixed;
    std::vector<double> b = rhs_vector(work, phi);
    auto project = [&](std::vector<double>& v) {
      if (!singular) return;
      double mean = 0.0;
      for (std::size_t k : unknowns) mean += v[k];
      mean /= static_cast<double>(unknowns.size());
      for (std::size_t k : unknowns) v[k] -= mean;
    };
    project(b);

    double bnorm = 0.0;
    for (std::size_t k : unknowns) bnorm += b[k] * b[k];
    bnorm = std::sqrt(bnorm);

    std::vector<double> x(g.size(), 0.0), r(g.size(), 0.0), z(g.size(), 0.0), p(g.size(), 0.0), ap;
    for (std::size_t k = 0; k < g.size(); ++k) x[k] = work.fixed[k] ? 0.0 : phi[k];
    apply_edge_operator(work, x, ap);
    for (std::size_t k : unknowns) r[k] = b[k] - ap[k];
    project(r);
    double rz = 0.0;
    for (std::size_t k : unknowns) {
      z[k] = r[k] / diag[k];
      p[k] = z[k];
      rz += r[k] * z[k];
    }
    const double target = opts.tol * (bnorm > 0 ? bnorm : 1.0);
    int it = 0;
    double rnorm = 0.0;
    for (std::size_t k : unknowns) rnorm += r[k] * r[k];
    rnorm = std::sqrt(rnorm);
    while (rnorm > target && bnorm > 0) {
      if (it >= opts.max_iter) {
        throw NumericalError("Poisson solver did not converge after " + std::to_string(it) + " iterations");
      }
      apply_edge_operator(work, p, ap);
      double pap = 0.0;
      for (std::size_t k : unknowns) pap += p[k] * ap[k];
      const double alpha = rz / pap;
      for (std::size_t k : unknowns) {
        x[k] += alpha * p[k];
        r[k] -= alpha * ap[k];
      }
      project(r);
      double rz_new = 0.0;
      rnorm = 0.0;
      for (std::size_t k : unknowns) {
        z[k] = r[k] / diag[k];
        rz_new += r[k] * z[k];
        rnorm += r[k] * r[k];
      }
      rnorm = std::sqrt(rnorm);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t k : unknowns) p[k] = z[k] + beta * p[k];
      ++it;
    }
    for (std::size_t k : unknowns) phi[k] = x[k];
    rep.iterations = it;
    rep.relative_residual = bnorm > 0 ? rnorm / bnorm : 0.0;
  }

  if (std::none_of(s.fixed.begin(), s.fixed.end(), [](auto f) { return f != 0; })) {
    double mean = 0.0, wsum = 0.0;
    for (std::size_t k : g.mask_nodes()) {
      mean += g.node_weight(k) * phi[k];
      wsum += g.node_weight(k);
    }
    mean /= wsum;
    for (std::size_t k : g.mask_nodes()) phi[k] -= mean;
  }
  return rep;
}

}  // namespace vortexlab

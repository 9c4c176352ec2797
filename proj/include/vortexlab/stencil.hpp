#pragma once

#include <array>
#include <vector>

#include "vortexlab/fields.hpp"

namespace vortexlab {

// Diagnostic operators: central differences at interior nodes, second-order
// one-sided differences where a neighbour leaves the mask, first-order when
// only one neighbour exists along that axis, zero when none does.

template <class T>
T partial(const NodeField<T>& f, int i, int j, int axis) {
  const Grid2D& g = *f.grid;
  const double h = g.h();
  const int di = axis == 0 ? 1 : 0;
  const int dj = axis == 1 ? 1 : 0;
  const bool fwd = g.in_mask(i + di, j + dj);
  const bool bwd = g.in_mask(i - di, j - dj);
  const T& c = f.at(i, j);
  if (fwd && bwd) return (0.5 / h) * (f.at(i + di, j + dj) - f.at(i - di, j - dj));
  if (fwd) {
    if (g.in_mask(i + 2 * di, j + 2 * dj)) {
      return (0.5 / h) * ((-3.0) * c + 4.0 * f.at(i + di, j + dj) - f.at(i + 2 * di, j + 2 * dj));
    }
    return (1.0 / h) * (f.at(i + di, j + dj) - c);
  }
  if (bwd) {
    if (g.in_mask(i - 2 * di, j - 2 * dj)) {
      return (0.5 / h) * (3.0 * c - 4.0 * f.at(i - di, j - dj) + f.at(i - 2 * di, j - 2 * dj));
    }
    return (1.0 / h) * (c - f.at(i - di, j - dj));
  }
  return T{};
}

template <class T>
T second_partial(const NodeField<T>& f, int i, int j, int axis) {
  const Grid2D& g = *f.grid;
  const double h2 = g.h() * g.h();
  const int di = axis == 0 ? 1 : 0;
  const int dj = axis == 1 ? 1 : 0;
  const T& c = f.at(i, j);
  const bool fwd = g.in_mask(i + di, j + dj);
  const bool bwd = g.in_mask(i - di, j - dj);
  if (fwd && bwd) return (1.0 / h2) * (f.at(i + di, j + dj) + f.at(i - di, j - dj) - 2.0 * c);
  const int s = fwd ? 1 : -1;
  if (!fwd && !bwd) return T{};
  auto at = [&](int n) -> const T& { return f.at(i + s * n * di, j + s * n * dj); };
  if (g.in_mask(i + 3 * s * di, j + 3 * s * dj)) {
    return (1.0 / h2) * (2.0 * c - 5.0 * at(1) + 4.0 * at(2) - at(3));
  }
  if (g.in_mask(i + 2 * s * di, j + 2 * s * dj)) return (1.0 / h2) * (c - 2.0 * at(1) + at(2));
  return T{};
}

/// Mixed derivative d^2/dxdy from nested first differences.
double mixed_partial(const NodeField<double>& f, int i, int j);

template <class T>
NodeField<T> laplacian(const NodeField<T>& f) {
  NodeField<T> out(f.grid);
  const Grid2D& g = *f.grid;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      out.at(i, j) = second_partial(f, i, j, 0) + second_partial(f, i, j, 1);
    }
  }
  return out;
}

VectorField gradient(const NodeField<double>& f);
NodeField<double> divergence(const VectorField& v);
/// Scalar curl  d v_y/dx - d v_x/dy.
NodeField<double> curl(const VectorField& v);

/// Variationally consistent lattice Laplacian used by the time steppers:
/// (L u)_k = 1/(w_k h^2) * sum_edges w_e (u_nb - u_k), with the node and
/// edge weights of the grid. It is the negative gradient of the discrete
/// Dirichlet energy 1/2 sum_e w_e |u_i - u_j|^2 in the weighted L^2 metric,
/// which makes discrete energy balances exact in the semi-discrete limit.
class EdgeLaplacian {
 public:
  explicit EdgeLaplacian(const Grid2D& g);

  template <class T>
  void apply(const std::vector<T>& u, std::vector<T>& out) const {
    visit(u, [&out](std::size_t k, const T& lu) { out[k] = lu; });
  }

  /// Calls f(k, (L u)_k) once for every free node. Rows of interior nodes
  /// with unit weights run as contiguous five-point loops.
  template <class T, class F>
  void visit(const std::vector<T>& u, F&& f) const;

  const std::vector<std::size_t>& free_nodes() const { return free_; }

 private:
  struct Run {
    std::size_t begin;
    std::size_t end;
  };
  std::vector<std::size_t> free_;
  std::vector<Run> runs_;
  std::vector<std::size_t> irregular_;
  std::vector<std::array<std::size_t, 4>> nb_;
  std::vector<std::array<double, 4>> coef_;
  std::size_t nx_{0};
  double inv_h2_{0.0};
};

template <class T, class F>
void EdgeLaplacian::visit(const std::vector<T>& u, F&& f) const {
  const std::ptrdiff_t nr = static_cast<std::ptrdiff_t>(runs_.size());
  const std::size_t nx = nx_;
  const double c = inv_h2_;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < nr; ++r) {
    const Run run = runs_[r];
    for (std::size_t k = run.begin; k < run.end; ++k) {
      f(k, c * (u[k + 1] + u[k - 1] + u[k + nx] + u[k - nx] - 4.0 * u[k]));
    }
  }
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(irregular_.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    const std::size_t k = irregular_[p];
    const auto& nb = nb_[p];
    const auto& cf = coef_[p];
    const T uk = u[k];
    f(k, cf[0] * (u[nb[0]] - uk) + cf[1] * (u[nb[1]] - uk) + cf[2] * (u[nb[2]] - uk) + cf[3] * (u[nb[3]] - uk));
  }
}

/// Discrete Dirichlet energy 1/2 sum_e w_e |u_i - u_j|^2 (exact h-scaling:
/// the h^2 quadrature factor cancels the 1/h^2 of the difference quotient).
double edge_dirichlet_energy(const ComplexField& u);
double edge_dirichlet_energy(const DirectorField& m);

}  // namespace vortexlab

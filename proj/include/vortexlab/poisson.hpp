#pragma once

#include <cstdint>
#include <vector>

#include "vortexlab/grid.hpp"

namespace vortexlab {

/// Weighted least-squares potential problem on the lattice edge graph:
///
///   minimise  1/2 sum_e w_e (phi_head - phi_tail - g_e)^2
///
/// over the non-fixed nodes. Horizontal edges run (i,j)->(i+1,j) and are
/// stored at index idx(i,j) in `wx`/`gx`; vertical edges (i,j)->(i,j+1) in
/// `wy`/`gy`. The normal equations are a discrete Poisson problem with
/// Dirichlet data on fixed nodes and natural (Neumann) data elsewhere.
struct EdgeSystem {
  GridPtr grid;
  std::vector<double> wx, wy;
  std::vector<double> gx, gy;
  std::vector<std::uint8_t> fixed;
  /// Optional node source added to the right-hand side of the normal
  /// equations (empty means none).
  std::vector<double> source;

  /// Grid edge weights, zero targets, nothing fixed.
  explicit EdgeSystem(GridPtr g);
};

struct SolverOptions {
  double tol{1e-10};
  int max_iter{20000};
  bool allow_fft{true};
};

struct SolveReport {
  int iterations{0};
  double relative_residual{0.0};
  bool used_fft{false};
};

/// Solves the system in place; `phi` supplies fixed values and the initial
/// guess. Uses a DST/DCT fast path on full rectangles with unmodified
/// weights, Jacobi-preconditioned conjugate gradients otherwise. On
/// pure-Neumann problems the solution is normalised to zero mean.
/// Throws NumericalError with the iteration count on non-convergence.
SolveReport solve_edge_system(const EdgeSystem& sys, std::vector<double>& phi, const SolverOptions& opts = {});

/// Applies the graph operator (A phi)_i = sum_e w_e (phi_i - phi_j) at non-fixed nodes.
void apply_edge_operator(const EdgeSystem& sys, const std::vector<double>& phi, std::vector<double>& out);

}  // namespace vortexlab

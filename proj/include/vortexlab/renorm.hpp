#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vortexlab/fields.hpp"
#include "vortexlab/grid.hpp"
#include "vortexlab/poisson.hpp"
#include "vortexlab/vortex.hpp"

namespace vortexlab {

/// sum_n d_n arg(x - a_n), each branch in (-pi, pi].
double singular_phase(Vec2 x, const VortexSet& v);
/// sum_n d_n (x - a_n)^perp / |x - a_n|^2.
Vec2 singular_phase_gradient(Vec2 x, const VortexSet& v);
/// prod_n ((x - a_n)/|x - a_n|)^{d_n}.
cplx singular_factor(Vec2 x, const VortexSet& v);

/// Harmonic phase theta of the canonical map m_* = e^{i theta} prod((x-a)/|x-a|)^d.
/// `theta` holds lattice values when a lattice solve produced it; `value`
/// and `gradient` evaluate it anywhere in the closed domain.
struct HarmonicCorrection {
  NodeField<double> theta;
  BoundaryKind bc_kind{BoundaryKind::Dirichlet};
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
  std::string method;
  SolveReport report;
};

struct CanonicalMap {
  ComplexField m;
  HarmonicCorrection correction;
};

/// Canonical harmonic map on the grid's domain and boundary condition.
///
/// Dirichlet data g = prod((x-b)/|x-b|)^{e_b} over `boundary_source`
/// (the vortices themselves when empty); its degree must equal sum d_n.
/// Rectangles and the Dirichlet disk solve the lattice Laplace problem
/// (fixed boundary phase, resp. boundary flux of the singular part);
/// the Neumann disk uses the exact image construction.
/// Requires rho(v) > 4h.
CanonicalMap canonical_map(const GridPtr& grid, const VortexSet& v, const VortexSet& boundary_source = {},
                           const SolverOptions& opts = {});

enum class RenormDomain { FreePlane, UnitDisk, Rectangle };
enum class RenormMethod { ClosedFormPairTerm, NumericLimit };
enum class GradientMethod { Auto, FiniteDifference, Identity };

std::string to_string(RenormDomain d);
RenormDomain renorm_domain_from_string(const std::string& s);

struct RenormalizedEnergyModel {
  RenormDomain domain{RenormDomain::FreePlane};
  BoundaryKind bc{BoundaryKind::Dirichlet};
  RenormMethod method{RenormMethod::ClosedFormPairTerm};
  /// Extent for the rectangle model.
  DomainSpec rectangle{DomainSpec::rectangle(0.0, 0.0, 1.0, 1.0)};
  /// Vortices generating the Dirichlet boundary map; empty means the
  /// evaluated configuration itself.
  VortexSet boundary_source;
  /// Quadrature nodes per unit-length direction scale; h = extent/(resolution-1).
  int resolution{257};
  /// Auto: closed form in the free plane, finite differences otherwise.
  GradientMethod gradient{GradientMethod::Auto};
  double fd_step{1e-3};

  static RenormalizedEnergyModel free_plane();
  static RenormalizedEnergyModel unit_disk(BoundaryKind bc, VortexSet source = {});
  static RenormalizedEnergyModel rectangle_domain(const DomainSpec& spec, BoundaryKind bc, VortexSet source = {});
};

struct RenormEvaluation {
  double W{0.0};
  std::string method;
  /// Cut-out radii of the Richardson levels (empty for the closed form).
  std::vector<double> rho_levels;
  /// Truncated values at those radii.
  std::vector<double> level_values;
};

/// Renormalized energy. Free plane: -pi sum over ordered pairs m != n of
/// d_m d_n log|a_m - a_n| (an unordered pair counts twice). Bounded
/// domains: lim_{rho->0} [ int_{Omega_rho} 1/2|grad m_*|^2 - N pi log(1/rho) ]
/// from three radii and Richardson extrapolation.
RenormEvaluation evaluate_renormalized_energy(const VortexSet& v, const RenormalizedEnergyModel& model);
double renormalized_energy(const VortexSet& v, const RenormalizedEnergyModel& model);

/// dW/da_n for every vortex (method chosen by model.gradient).
std::vector<Vec2> grad_W(const VortexSet& v, const RenormalizedEnergyModel& model);
/// 2 pi d_n (grad H_n(a_n))^perp with H_n = theta + sum_{m != n} d_m arg(x - a_m).
std::vector<Vec2> grad_W_identity(const VortexSet& v, const RenormalizedEnergyModel& model);
/// Central differences of renormalized_energy with step model.fd_step.
std::vector<Vec2> grad_W_finite_difference(const VortexSet& v, const RenormalizedEnergyModel& model);

/// Harmonic correction for a renormalized-energy model (analytic on the
/// disk, lattice solve at model.resolution on the rectangle, zero in the plane).
HarmonicCorrection model_correction(const VortexSet& v, const RenormalizedEnergyModel& model);

/// Pointwise grad f (x) grad f summed over components, central differences.
TensorField stress_energy(const ComplexField& u);
TensorField stress_energy(const DirectorField& m);

/// phi = sum_n chi(|x - a_n|) (c_n + b_n.(x - a_n) + 1/2 (x-a_n)^T H_n (x-a_n)),
/// chi = 1 on [0, r0], smooth decay to 0 at r1. Flatness near the vortices
/// requires every H_n to vanish.
struct TestFunction {
  double r0{0.05};
  double r1{0.2};
  std::vector<double> c;
  std::vector<Vec2> b;
  std::vector<Sym2> hessian;
};

struct IdentityResidual {
  /// pi sum grad^perp phi(a_n) . dW/da_n
  double lhs{0.0};
  double rhs{0.0};
  /// |lhs - rhs|
  double residual{0.0};
  /// pi sum |b_n| |dW/da_n|, the natural size of the left side.
  double scale{0.0};
  /// |lhs/pi - rhs|, the same balance without the leading factor pi.
  double residual_unit_coefficient{0.0};
};

/// Both sides of  pi sum grad^perp phi(a_n) . dW/da_n = - int grad^perp grad phi : (grad m_* (x) grad m_*).
/// Throws ConfigError when phi is not affine near some vortex or its
/// support leaves the domain.
IdentityResidual renorm_identity_residual(const TestFunction& phi, const VortexSet& v,
                                          const RenormalizedEnergyModel& model);

}  // namespace vortexlab

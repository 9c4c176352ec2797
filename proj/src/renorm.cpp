#include "vortexlab/renorm.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <utility>

#include "vortexlab/errors.hpp"
#include "vortexlab/stencil.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double x) {
  x = std::remainder(x, 2.0 * kPi);
  return x <= -kPi ? x + 2.0 * kPi : x;
}

cplx as_complex(Vec2 p) { return {p.x, p.y}; }
Vec2 as_vec(cplx z) { return {z.real(), z.imag()}; }

// Quintic smoothstep cutoff: 1 on [0, r0], 0 beyond r1; returns (chi, chi', chi'').
struct Cutoff {
  double r0, r1;
  std::array<double, 3> operator()(double r) const {
    if (r <= r0) return {1.0, 0.0, 0.0};
    if (r >= r1) return {0.0, 0.0, 0.0};
    const double w = r1 - r0;
    const double t = (r - r0) / w;
    const double s = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    const double s1 = 30.0 * t * t * (1.0 - t) * (1.0 - t);
    const double s2 = 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
    return {1.0 - s, -s1 / w, -s2 / (w * w)};
  }
};

using Rule = std::vector<std::pair<double, double>>;

// Composite Gauss-Legendre rule on [a, b].
Rule composite_gauss(double a, double b, int segments) {
  using G = boost::math::quadrature::gauss<double, 20>;
  Rule out;
  out.reserve(static_cast<std::size_t>(segments) * 20);
  const double len = (b - a) / segments;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  for (int s = 0; s < segments; ++s) {
    const double mid = a + (s + 0.5) * len;
    for (std::size_t k = 0; k < x.size(); ++k) {
      out.emplace_back(mid + 0.5 * len * x[k], 0.5 * len * w[k]);
      out.emplace_back(mid - 0.5 * len * x[k], 0.5 * len * w[k]);
    }
  }
  return out;
}

double distance_to_boundary(Vec2 p, const RenormalizedEnergyModel& m) {
  switch (m.domain) {
    case RenormDomain::UnitDisk:
      return 1.0 - norm(p);
    case RenormDomain::Rectangle: {
      const DomainSpec& r = m.rectangle;
      return std::min({p.x - r.x_min, r.x_max - p.x, p.y - r.y_min, r.y_max - p.y});
    }
    case RenormDomain::FreePlane:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

void validate_model_input(const VortexSet& v, const RenormalizedEnergyModel& model) {
  if (v.empty()) throw ConfigError("renormalized energy of an empty vortex set");
  for (const auto& x : v) {
    if (x.d != 1 && x.d != -1) throw ConfigError("vortex degree must be +1 or -1");
    if (!(distance_to_boundary(x.a, model) > 0.0)) throw ConfigError("vortex outside the domain");
  }
  if (!(rho(v) > 0.0)) throw ConfigError("coincident vortices");
  if (model.domain != RenormDomain::FreePlane && model.method == RenormMethod::ClosedFormPairTerm) {
    throw ConfigError("closed-form renormalized energy is available only in the free plane");
  }
  if (model.resolution < 17) throw ConfigError("renormalized-energy resolution too coarse");
}

const VortexSet& source_of(const VortexSet& v, const VortexSet& source) { return source.empty() ? v : source; }

void check_degree(const VortexSet& v, const VortexSet& src) {
  if (src.total_degree() != v.total_degree()) {
    throw ConfigError("boundary data degree does not match the total vortex degree");
  }
}

// Bilinear interpolation of node data over masked corners.
template <class T>
T interpolate(const NodeField<T>& f, Vec2 p) {
  const Grid2D& g = *f.grid;
  const double fx = (p.x - g.origin().x) / g.h();
  const double fy = (p.y - g.origin().y) / g.h();
  int i = std::clamp(static_cast<int>(std::floor(fx)), 0, g.nx() - 2);
  int j = std::clamp(static_cast<int>(std::floor(fy)), 0, g.ny() - 2);
  const double tx = std::clamp(fx - i, 0.0, 1.0);
  const double ty = std::clamp(fy - j, 0.0, 1.0);
  T acc{};
  double wsum = 0.0;
  const double wts[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};
  const int di[4] = {0, 1, 0, 1};
  const int dj[4] = {0, 0, 1, 1};
  for (int c = 0; c < 4; ++c) {
    if (!g.in_mask(i + di[c], j + dj[c])) continue;
    acc += wts[c] * f.at(i + di[c], j + dj[c]);
    wsum += wts[c];
  }
  if (wsum <= 0.0) return T{};
  return acc * (1.0 / wsum);
}

HarmonicCorrection disk_image_correction(const VortexSet& v, const VortexSet& src, BoundaryKind bc) {
  HarmonicCorrection hc;
  hc.bc_kind = bc;
  hc.method = "disk-image";
  if (bc == BoundaryKind::Dirichlet) {
    hc.value = [v, src](Vec2 x) {
      const cplx z = as_complex(x);
      double t = 0.0;
      for (const auto& a : v) t += a.d * std::arg(1.0 - std::conj(as_complex(a.a)) * z);
      for (const auto& b : src) t -= b.d * std::arg(1.0 - std::conj(as_complex(b.a)) * z);
      return t;
    };
    hc.gradient = [v, src](Vec2 x) {
      const cplx z = as_complex(x);
      const cplx mi(0.0, -1.0);
      cplx g = 0.0;
      for (const auto& a : v) {
        const cplx c = as_complex(a.a);
        g += static_cast<double>(a.d) * mi * c / (1.0 - c * std::conj(z));
      }
      for (const auto& b : src) {
        const cplx c = as_complex(b.a);
        g -= static_cast<double>(b.d) * mi * c / (1.0 - c * std::conj(z));
      }
      return as_vec(g);
    };
  } else {
    std::vector<std::pair<Vec2, int>> images;
    for (const auto& a : v) {
      const double r2 = norm2(a.a);
      if (r2 > 1e-28) images.emplace_back(a.a / r2, a.d);
    }
    hc.value = [images](Vec2 x) {
      double t = 0.0;
      for (const auto& [p, d] : images) t -= d * std::atan2(x.y - p.y, x.x - p.x);
      return t;
    };
    hc.gradient = [images](Vec2 x) {
      Vec2 g;
      for (const auto& [p, d] : images) {
        const Vec2 y = x - p;
        g -= (static_cast<double>(d) / norm2(y)) * perp(y);
      }
      return g;
    };
  }
  return hc;
}

HarmonicCorrection lattice_correction(const GridPtr& grid, const VortexSet& v, const VortexSet& src,
                                      const SolverOptions& opts) {
  const Grid2D& g = *grid;
  EdgeSystem sys(grid);
  std::vector<double> phi(g.size(), 0.0);
  if (g.bc() == BoundaryKind::Dirichlet) {
    check_degree(v, src);
    std::vector<std::size_t> nodes = g.boundary_nodes();
    const Vec2 c = g.center();
    std::vector<double> ang(g.size(), 0.0);
    for (std::size_t k : nodes) {
      const Vec2 p = g.position(k) - c;
      ang[k] = std::atan2(p.y, p.x);
    }
    std::sort(nodes.begin(), nodes.end(), [&](std::size_t a, std::size_t b) { return ang[a] < ang[b]; });
    auto lifted = [&](std::size_t k) {
      Vec2 x = g.position(k);
      Vec2 on = x;
      if (g.domain() == DomainKind::UnitDisk) on = x / norm(x);
      return std::arg(singular_factor(on, src) * std::conj(singular_factor(x, v)));
    };
    double prev = lifted(nodes.front());
    double acc = prev;
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      const double a = lifted(nodes[p]);
      if (p > 0) acc += wrap(a - prev);
      prev = a;
      phi[nodes[p]] = acc;
      sys.fixed[nodes[p]] = 1;
    }
    const double closure = acc + wrap(lifted(nodes.front()) - prev) - phi[nodes.front()];
    if (std::abs(closure) > kPi) throw ConfigError("boundary data degree does not match the total vortex degree");
  } else {
    sys.source.assign(g.size(), 0.0);
    for (std::size_t k : g.boundary_nodes()) {
      const int i = static_cast<int>(k % g.nx());
      const int j = static_cast<int>(k / g.nx());
      const cplx sk = std::conj(singular_factor(g.position(k), v));
      double b = 0.0;
      auto edge = [&](int ii, int jj, double w) {
        if (w > 0) b += w * std::arg(singular_factor(g.position(ii, jj), v) * sk);
      };
      if (i + 1 < g.nx()) edge(i + 1, j, g.edge_weight(i, j, true));
      if (i > 0) edge(i - 1, j, g.edge_weight(i - 1, j, true));
      if (j + 1 < g.ny()) edge(i, j + 1, g.edge_weight(i, j, false));
      if (j > 0) edge(i, j - 1, g.edge_weight(i, j - 1, false));
      sys.source[k] = b;
    }
  }
  HarmonicCorrection hc;
  hc.bc_kind = g.bc();
  hc.report = solve_edge_system(sys, phi, opts);
  hc.method = hc.report.used_fft ? "lattice-fft" : "lattice-cg";
  hc.theta = NodeField<double>(grid);
  hc.theta.values = std::move(phi);
  auto theta = std::make_shared<NodeField<double>>(hc.theta);
  auto grad = std::make_shared<VectorField>(gradient(hc.theta));
  hc.value = [theta](Vec2 x) { return interpolate(*theta, x); };
  hc.gradient = [grad](Vec2 x) { return interpolate(*grad, x); };
  return hc;
}

Vec2 pair_gradient(const VortexSet& v, std::size_t n) {
  Vec2 g;
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (m == n) continue;
    const Vec2 y = v[n].a - v[m].a;
    g += (static_cast<double>(v[m].d) / norm2(y)) * y;
  }
  return (-2.0 * kPi * v[n].d) * g;
}

double closed_form_W(const VortexSet& v) {
  double w = 0.0;
  for (std::size_t m = 0; m < v.size(); ++m) {
    for (std::size_t n = 0; n < v.size(); ++n) {
      if (m != n) w -= kPi * v[m].d * v[n].d * std::log(norm(v[m].a - v[n].a));
    }
  }
  return w;
}

// Fixes the Dirichlet source to the configuration where a derivative is taken.
RenormalizedEnergyModel frozen(const VortexSet& v, RenormalizedEnergyModel model) {
  if (model.bc == BoundaryKind::Dirichlet && model.boundary_source.empty()) model.boundary_source = v;
  return model;
}

}  // namespace

double singular_phase(Vec2 x, const VortexSet& v) {
  double s = 0.0;
  for (const auto& a : v) {
    const Vec2 y = x - a.a;
    if (norm2(y) > 0.0) s += a.d * std::atan2(y.y, y.x);
  }
  return s;
}

Vec2 singular_phase_gradient(Vec2 x, const VortexSet& v) {
  Vec2 g;
  for (const auto& a : v) {
    const Vec2 y = x - a.a;
    const double r2 = norm2(y);
    if (r2 > 0.0) g += (static_cast<double>(a.d) / r2) * perp(y);
  }
  return g;
}

cplx singular_factor(Vec2 x, const VortexSet& v) {
  cplx s = 1.0;
  for (const auto& a : v) {
    const Vec2 y = x - a.a;
    const double r = norm(y);
    if (r < 1e-14) continue;
    const cplx z(y.x / r, y.y / r);
    s *= a.d > 0 ? z : std::conj(z);
  }
  return s;
}

CanonicalMap canonical_map(const GridPtr& grid, const VortexSet& v, const VortexSet& boundary_source,
                           const SolverOptions& opts) {
  const Grid2D& g = *grid;
  validate(v, g);
  if (!v.empty() && !(rho(v, g) > 4.0 * g.h())) throw ConfigError("vortices unresolved on this grid: rho(v) <= 4h");
  const VortexSet& src = source_of(v, boundary_source);
  CanonicalMap out;
  if (g.domain() == DomainKind::UnitDisk && g.bc() == BoundaryKind::Neumann) {
    out.correction = disk_image_correction(v, src, BoundaryKind::Neumann);
    out.correction.theta = NodeField<double>(grid);
    for (std::size_t k : g.mask_nodes()) out.correction.theta[k] = out.correction.value(g.position(k));
  } else {
    out.correction = lattice_correction(grid, v, src, opts);
  }
  out.m = ComplexField(grid);
  for (std::size_t k : g.mask_nodes()) {
    out.m[k] = std::polar(1.0, out.correction.theta[k]) * singular_factor(g.position(k), v);
  }
  return out;
}

std::string to_string(RenormDomain d) {
  switch (d) {
    case RenormDomain::FreePlane: return "free-plane";
    case RenormDomain::UnitDisk: return "disk";
    case RenormDomain::Rectangle: return "rectangle";
  }
  return "?";
}

RenormDomain renorm_domain_from_string(const std::string& s) {
  if (s == "free-plane" || s == "plane") return RenormDomain::FreePlane;
  if (s == "disk" || s == "unit-disk") return RenormDomain::UnitDisk;
  if (s == "rectangle") return RenormDomain::Rectangle;
  throw ConfigError("unknown renormalized-energy domain '" + s + "'");
}

RenormalizedEnergyModel RenormalizedEnergyModel::free_plane() { return {}; }

RenormalizedEnergyModel RenormalizedEnergyModel::unit_disk(BoundaryKind bc, VortexSet source) {
  RenormalizedEnergyModel m;
  m.domain = RenormDomain::UnitDisk;
  m.bc = bc;
  m.method = RenormMethod::NumericLimit;
  m.boundary_source = std::move(source);
  return m;
}

RenormalizedEnergyModel RenormalizedEnergyModel::rectangle_domain(const DomainSpec& spec, BoundaryKind bc,
                                                                  VortexSet source) {
  RenormalizedEnergyModel m;
  m.domain = RenormDomain::Rectangle;
  m.bc = bc;
  m.method = RenormMethod::NumericLimit;
  m.rectangle = spec;
  m.boundary_source = std::move(source);
  return m;
}

HarmonicCorrection model_correction(const VortexSet& v, const RenormalizedEnergyModel& model) {
  const VortexSet& src = source_of(v, model.boundary_source);
  switch (model.domain) {
    case RenormDomain::FreePlane: {
      HarmonicCorrection hc;
      hc.method = "none";
      hc.value = [](Vec2) { return 0.0; };
      hc.gradient = [](Vec2) { return Vec2{}; };
      return hc;
    }
    case RenormDomain::UnitDisk:
      if (model.bc == BoundaryKind::Dirichlet) check_degree(v, src);
      return disk_image_correction(v, src, model.bc);
    case RenormDomain::Rectangle: {
      const DomainSpec& r = model.rectangle;
      const double h = (r.x_max - r.x_min) / (model.resolution - 1);
      const int ny = static_cast<int>(std::lround((r.y_max - r.y_min) / h)) + 1;
      const GridPtr grid = make_grid(model.resolution, ny, r, model.bc);
      return canonical_map(grid, v, model.boundary_source).correction;
    }
  }
  throw ConfigError("unknown renormalized-energy domain");
}

RenormEvaluation evaluate_renormalized_energy(const VortexSet& v, const RenormalizedEnergyModel& model) {
  validate_model_input(v, model);
  RenormEvaluation ev;
  if (model.domain == RenormDomain::FreePlane) {
    ev.W = closed_form_W(v);
    ev.method = "closed-form-pair-term";
    return ev;
  }
  ev.method = "numeric-limit";
  const HarmonicCorrection hc = model_correction(v, model);
  auto current = [&](Vec2 x) { return hc.gradient(x) + singular_phase_gradient(x, v); };

  double rv = rho(v);
  for (const auto& x : v) rv = std::min(rv, distance_to_boundary(x.a, model));
  const double rp = 0.5 * rv;
  const Cutoff patch{rp, 2.0 * rp};
  const double extent = model.domain == RenormDomain::UnitDisk ? 2.0 : model.rectangle.x_max - model.rectangle.x_min;
  const double h = extent / (model.resolution - 1);
  double rho0 = 8.0 * h;
  if (4.0 * rho0 > rp) rho0 = rp / 4.0;
  ev.rho_levels = {rho0, 2.0 * rho0, 4.0 * rho0};

  auto outer_integrand = [&](Vec2 x) {
    double psi = 0.0;
    for (const auto& a : v) psi += patch(norm(x - a.a))[0];
    if (psi >= 1.0) return 0.0;
    return 0.5 * norm2(current(x)) * (1.0 - psi);
  };

  double outer = 0.0;
  const int segs = std::max(8, model.resolution / 16);
  if (model.domain == RenormDomain::UnitDisk) {
    const Rule radial = composite_gauss(0.0, 1.0, segs);
    const int nang = 2 * model.resolution;
    const double dpsi = 2.0 * kPi / nang;
    for (const auto& [r, wr] : radial) {
      double s = 0.0;
      for (int k = 0; k < nang; ++k) {
        const double t = (k + 0.5) * dpsi;
        s += outer_integrand({r * std::cos(t), r * std::sin(t)});
      }
      outer += wr * r * dpsi * s;
    }
  } else {
    const DomainSpec& rc = model.rectangle;
    const int sx = std::max(8, static_cast<int>((rc.x_max - rc.x_min) / h / 8.0));
    const int sy = std::max(8, static_cast<int>((rc.y_max - rc.y_min) / h / 8.0));
    const Rule gx = composite_gauss(rc.x_min, rc.x_max, sx);
    const Rule gy = composite_gauss(rc.y_min, rc.y_max, sy);
    for (const auto& [y, wy] : gy) {
      double s = 0.0;
      for (const auto& [x, wx] : gx) s += wx * outer_integrand({x, y});
      outer += wy * s;
    }
  }

  // Patch integrals in polar coordinates about each vortex. Inner radii use
  // s = log r, where |j|^2 r^2 is smooth.
  const int nang = 256;
  const double dpsi = 2.0 * kPi / nang;
  auto ring = [&](const Vortex& a, double r) {
    double s = 0.0;
    for (int k = 0; k < nang; ++k) {
      const double t = (k + 0.5) * dpsi;
      s += 0.5 * norm2(current(a.a + Vec2{r * std::cos(t), r * std::sin(t)}));
    }
    return s * dpsi;
  };
  std::array<double, 3> inner{0.0, 0.0, 0.0};  // [rho_k, rp] contributions
  double rings = 0.0;
  for (const auto& a : v) {
    const double bounds[4] = {ev.rho_levels[0], ev.rho_levels[1], ev.rho_levels[2], rp};
    double seg[3];
    for (int q = 0; q < 3; ++q) {
      seg[q] = 0.0;
      for (const auto& [s, ws] : composite_gauss(std::log(bounds[q]), std::log(bounds[q + 1]), 2)) {
        const double r = std::exp(s);
        seg[q] += ws * r * r * ring(a, r);
      }
    }
    inner[0] += seg[0] + seg[1] + seg[2];
    inner[1] += seg[1] + seg[2];
    inner[2] += seg[2];
    for (const auto& [r, wr] : composite_gauss(rp, 2.0 * rp, 2)) rings += wr * r * patch(r)[0] * ring(a, r);
  }
  const double N = static_cast<double>(v.size());
  for (int q = 0; q < 3; ++q) {
    ev.level_values.push_back(outer + rings + inner[q] - N * kPi * std::log(1.0 / ev.rho_levels[q]));
  }
  ev.W = (64.0 * ev.level_values[0] - 20.0 * ev.level_values[1] + ev.level_values[2]) / 45.0;
  return ev;
}

double renormalized_energy(const VortexSet& v, const RenormalizedEnergyModel& model) {
  return evaluate_renormalized_energy(v, model).W;
}

std::vector<Vec2> grad_W_identity(const VortexSet& v, const RenormalizedEnergyModel& model) {
  validate_model_input(v, model);
  std::vector<Vec2> out(v.size());
  if (model.domain == RenormDomain::FreePlane) {
    for (std::size_t n = 0; n < v.size(); ++n) out[n] = pair_gradient(v, n);
    return out;
  }
  const HarmonicCorrection hc = model_correction(v, frozen(v, model));
  for (std::size_t n = 0; n < v.size(); ++n) {
    Vec2 gh = hc.gradient(v[n].a);
    for (std::size_t m = 0; m < v.size(); ++m) {
      if (m == n) continue;
      const Vec2 y = v[n].a - v[m].a;
      gh += (static_cast<double>(v[m].d) / norm2(y)) * perp(y);
    }
    out[n] = (2.0 * kPi * v[n].d) * perp(gh);
  }
  return out;
}

std::vector<Vec2> grad_W_finite_difference(const VortexSet& v, const RenormalizedEnergyModel& model) {
  validate_model_input(v, model);
  const RenormalizedEnergyModel fm = frozen(v, model);
  const double d = model.fd_step;
  std::vector<Vec2> out(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) {
    for (int axis = 0; axis < 2; ++axis) {
      VortexSet p = v, m = v;
      (axis == 0 ? p[n].a.x : p[n].a.y) += d;
      (axis == 0 ? m[n].a.x : m[n].a.y) -= d;
      const double g = (renormalized_energy(p, fm) - renormalized_energy(m, fm)) / (2.0 * d);
      (axis == 0 ? out[n].x : out[n].y) = g;
    }
  }
  return out;
}

std::vector<Vec2> grad_W(const VortexSet& v, const RenormalizedEnergyModel& model) {
  switch (model.gradient) {
    case GradientMethod::Identity:
      return grad_W_identity(v, model);
    case GradientMethod::FiniteDifference:
      return grad_W_finite_difference(v, model);
    case GradientMethod::Auto:
      break;
  }
  if (model.domain == RenormDomain::FreePlane) return grad_W_identity(v, model);
  return grad_W_finite_difference(v, model);
}

TensorField stress_energy(const ComplexField& u) {
  TensorField t(u.grid);
  const Grid2D& g = *u.grid;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      const cplx a = partial(u, i, j, 0);
      const cplx b = partial(u, i, j, 1);
      t.at(i, j) = {std::norm(a), (a * std::conj(b)).real(), std::norm(b)};
    }
  }
  return t;
}

TensorField stress_energy(const DirectorField& m) {
  TensorField t(m.grid);
  const Grid2D& g = *m.grid;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      const Vec3 a = partial(m, i, j, 0);
      const Vec3 b = partial(m, i, j, 1);
      t.at(i, j) = {dot(a, a), dot(a, b), dot(b, b)};
    }
  }
  return t;
}

IdentityResidual renorm_identity_residual(const TestFunction& phi, const VortexSet& v,
                                          const RenormalizedEnergyModel& model) {
  validate_model_input(v, model);
  const std::size_t N = v.size();
  if (phi.c.size() != N || phi.b.size() != N || (!phi.hessian.empty() && phi.hessian.size() != N)) {
    throw ConfigError("test function needs one affine germ per vortex");
  }
  if (!(phi.r0 > 0.0 && phi.r1 > phi.r0)) throw ConfigError("test function radii must satisfy 0 < r0 < r1");
  for (std::size_t n = 0; n < N; ++n) {
    if (!phi.hessian.empty()) {
      const Sym2& H = phi.hessian[n];
      if (H.xx != 0.0 || H.xy != 0.0 || H.yy != 0.0) {
        throw ConfigError("test function is not affine near vortex " + std::to_string(n));
      }
    }
    for (std::size_t m = 0; m < N; ++m) {
      if (m != n && norm(v[n].a - v[m].a) < phi.r1 + phi.r0) {
        throw ConfigError("test function is not affine near vortex " + std::to_string(m));
      }
    }
    if (phi.r1 > distance_to_boundary(v[n].a, model)) throw ConfigError("test function support leaves the domain");
  }

  const std::vector<Vec2> g = grad_W(v, model);
  IdentityResidual res;
  for (std::size_t n = 0; n < N; ++n) {
    res.lhs += kPi * dot(perp(phi.b[n]), g[n]);
    res.scale += kPi * norm(phi.b[n]) * norm(g[n]);
  }

  const HarmonicCorrection hc = model_correction(v, frozen(v, model));
  const Cutoff chi{phi.r0, phi.r1};
  const int nang = 512;
  const double dpsi = 2.0 * kPi / nang;
  const Rule radial = composite_gauss(phi.r0, phi.r1, 6);
  double rhs = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    const Vec2 b = phi.b[n];
    for (const auto& [r, wr] : radial) {
      const auto c = chi(r);
      const double c1 = c[1], c2 = c[2];
      double s = 0.0;
      for (int k = 0; k < nang; ++k) {
        const double t = (k + 0.5) * dpsi;
        const Vec2 e{std::cos(t), std::sin(t)};
        const Vec2 x = v[n].a + r * e;
        const double L = phi.c[n] + r * dot(b, e);
        const double hxx = c2 * e.x * e.x * L + c1 * (1.0 - e.x * e.x) / r * L + 2.0 * c1 * e.x * b.x;
        const double hyy = c2 * e.y * e.y * L + c1 * (1.0 - e.y * e.y) / r * L + 2.0 * c1 * e.y * b.y;
        const double hxy = c2 * e.x * e.y * L - c1 * e.x * e.y / r * L + c1 * (e.x * b.y + e.y * b.x);
        const Vec2 jx = hc.gradient(x) + singular_phase_gradient(x, v);
        const double txx = jx.x * jx.x, txy = jx.x * jx.y, tyy = jx.y * jx.y;
        s += hxy * (tyy - txx) + (hxx - hyy) * txy;
      }
      rhs -= wr * r * dpsi * s;
    }
  }
  res.rhs = rhs;
  res.residual = std::abs(res.lhs - res.rhs);
  res.residual_unit_coefficient = std::abs(res.lhs / kPi - res.rhs);
  return res;
}

}  // namespace vortexlab

#include "vortexlab/motion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

double domain_rho(const OdeState& s) {
  const VortexSet& v = s.vortices;
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < v.size(); ++n) {
    for (std::size_t m = n + 1; m < v.size(); ++m) r = std::min(r, 0.5 * norm(v[n].a - v[m].a));
  }
  if (s.model.domain == RenormDomain::UnitDisk) {
    for (const auto& x : v) r = std::min(r, 1.0 - norm(x.a));
  } else if (s.model.domain == RenormDomain::Rectangle) {
    const DomainSpec& d = s.model.rectangle;
    for (const auto& x : v) {
      r = std::min({r, x.a.x - d.x_min, d.x_max - x.a.x, x.a.y - d.y_min, d.y_max - x.a.y});
    }
  }
  return r;
}

bool boundary_limited(const OdeState& s) {
  if (s.model.domain == RenormDomain::FreePlane) return false;
  const double r = domain_rho(s);
  OdeState pairs = s;
  pairs.model.domain = RenormDomain::FreePlane;
  return domain_rho(pairs) > r;
}

std::vector<double> pack(const VortexSet& v) {
  std::vector<double> y;
  for (const auto& x : v) {
    y.push_back(x.a.x);
    y.push_back(x.a.y);
  }
  return y;
}

void unpack(const std::vector<double>& y, VortexSet& v) {
  for (std::size_t n = 0; n < v.size(); ++n) v[n].a = {y[2 * n], y[2 * n + 1]};
}

std::vector<double> eval(OdeState& s, const std::vector<double>& y) {
  unpack(y, s.vortices);
  std::vector<double> out;
  for (const Vec2& v : ode_rhs(s)) {
    out.push_back(v.x);
    out.push_back(v.y);
  }
  return out;
}

}  // namespace

std::string to_string(OdeKind k) { return k == OdeKind::LLG ? "llg" : "gl"; }

OdeKind ode_kind_from_string(const std::string& s) {
  if (s == "llg") return OdeKind::LLG;
  if (s == "gl") return OdeKind::GL;
  throw ConfigError("unknown ODE kind: " + s);
}

std::vector<Vec2> ode_rhs(const OdeState& s) {
  const VortexSet& v = s.vortices;
  if (v.empty()) throw ConfigError("empty vortex set");
  for (const auto& x : v) {
    if (x.d != 1 && x.d != -1) throw ConfigError("degrees must be +1 or -1");
  }
  if (!(domain_rho(s) > s.r_min)) throw ConfigError("vortices within r_min of a collision or the boundary");
  RenormalizedEnergyModel model = s.model;
  if (model.gradient == GradientMethod::Auto && model.domain != RenormDomain::FreePlane) {
    model.gradient = GradientMethod::Identity;
  }
  const std::vector<Vec2> dw = grad_W(v, model);
  std::vector<Vec2> out(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) {
    const double g = s.kind == OdeKind::LLG ? 4.0 * v[n].q : 2.0 * v[n].d;
    if (s.alpha0 == 0.0 && g == 0.0) throw ConfigError("degenerate coefficient: alpha0 = 0 and q = 0");
    const std::complex<double> a = -std::complex<double>(dw[n].x, dw[n].y) / (kPi * std::complex<double>(s.alpha0, g));
    out[n] = {a.real(), a.imag()};
  }
  return out;
}

Trajectory ode_integrate(const OdeState& s0, double t_end, double tol, const OdeOptions& opts) {
  if (!(tol >= 1e-12 && tol <= 1e-4)) throw ConfigError("tol must lie in [1e-12, 1e-4]");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  OdeState s = s0;
  ode_rhs(s);
  std::vector<QJump> jumps = opts.jumps;
  std::stable_sort(jumps.begin(), jumps.end(), [](const QJump& a, const QJump& b) { return a.time < b.time; });
  for (const auto& j : jumps) {
    if (j.vortex >= s.vortices.size()) throw ConfigError("q jump refers to an unknown vortex");
  }
  const double h_max = opts.max_step > 0.0 ? opts.max_step : t_end / 200.0;

  Trajectory traj;
  traj.model = "ode-" + to_string(s.kind);
  traj.alpha0 = s.alpha0;

  auto record = [&](double t, const std::vector<double>& y, const std::vector<double>& k) {
    unpack(y, s.vortices);
    TrajectorySample smp;
    smp.time = t;
    for (std::size_t n = 0; n < s.vortices.size(); ++n) {
      TrackPoint p;
      p.position = s.vortices[n].a;
      p.degree = s.vortices[n].d;
      p.q = s.kind == OdeKind::LLG ? s.vortices[n].q : 0.5 * s.vortices[n].d;
      p.velocity = {k[2 * n], k[2 * n + 1]};
      smp.vortices.push_back(p);
    }
    if (opts.record_energy) {
      smp.W = renormalized_energy(s.vortices, s.model);
      // Central difference of W along the velocity field.
      const double delta = 1e-4;
      VortexSet plus = s.vortices, minus = s.vortices;
      for (std::size_t n = 0; n < plus.size(); ++n) {
        const Vec2 v{k[2 * n], k[2 * n + 1]};
        plus[n].a += delta * v;
        minus[n].a -= delta * v;
      }
      try {
        smp.dW_dt = (renormalized_energy(plus, s.model) - renormalized_energy(minus, s.model)) / (2.0 * delta);
      } catch (const ConfigError&) {
        smp.dW_dt = kMissing;
      }
    }
    traj.samples.push_back(std::move(smp));
  };

  // Dormand-Prince tableau.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  std::vector<double> y = pack(s.vortices);
  const std::size_t dim = y.size();
  double t = 0.0;
  std::vector<double> k1 = eval(s, y);
  record(t, y, k1);
  double h = std::min(h_max, 1e-3 * t_end);
  std::size_t next_jump = 0;
  std::vector<double> k2, k3, k4, k5, k6, k7, tmp(dim), y5(dim);

  auto stage = [&](std::initializer_list<std::pair<double, const std::vector<double>*>> terms, double step) {
    for (std::size_t i = 0; i < dim; ++i) {
      double acc = y[i];
      for (const auto& [c, k] : terms) acc += step * c * (*k)[i];
      tmp[i] = acc;
    }
    return eval(s, tmp);
  };

  while (t < t_end * (1.0 - 1e-14)) {
    double limit = t_end;
    if (next_jump < jumps.size()) limit = std::min(limit, jumps[next_jump].time);
    const double step = std::min({h, h_max, limit - t});
    if (step < 1e-14 * std::max(1.0, t)) {
      traj.stop = boundary_limited(s) ? StopReason::BoundaryEscape : StopReason::Collision;
      break;
    }
    try {
      k2 = stage({{a21, &k1}}, step);
      k3 = stage({{a31, &k1}, {a32, &k2}}, step);
      k4 = stage({{a41, &k1}, {a42, &k2}, {a43, &k3}}, step);
      k5 = stage({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, step);
      k6 = stage({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, step);
      for (std::size_t i = 0; i < dim; ++i) {
        y5[i] = y[i] + step * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      }
      k7 = eval(s, y5);
    } catch (const ConfigError&) {
      // A stage left the admissible set: shrink the step.
      unpack(y, s.vortices);
      h = 0.25 * step;
      continue;
    }
    double err = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      err = std::max(err, std::abs(e));
      scale = std::max(scale, std::abs(y5[i]));
    }
    err /= tol * scale;
    if (err <= 1.0) {
      t += step;
      y = y5;
      k1 = k7;
      unpack(y, s.vortices);
      if (next_jump < jumps.size() && t >= jumps[next_jump].time * (1.0 - 1e-14)) {
        while (next_jump < jumps.size() && jumps[next_jump].time <= t * (1.0 + 1e-14)) {
          s.vortices[jumps[next_jump].vortex].q = jumps[next_jump].q;
          ++next_jump;
        }
        k1 = eval(s, y);
      }
      record(t, y, k1);
      if (!(domain_rho(s) > s.r_min)) {
        traj.stop = boundary_limited(s) ? StopReason::BoundaryEscape : StopReason::Collision;
        break;
      }
    }
    const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h = step * std::clamp(factor, 0.2, 5.0);
  }
  return traj;
}

double energy_decay_check(const Trajectory& traj) {
  const double alpha0 = std::isnan(traj.alpha0) ? 0.0 : traj.alpha0;
  double worst = 0.0;
  for (const auto& s : traj.samples) {
    if (std::isnan(s.dW_dt)) continue;
    double speed2 = 0.0;
    for (const auto& p : s.vortices) speed2 += norm2(p.velocity);
    worst = std::max(worst, std::abs(s.dW_dt + kPi * alpha0 * speed2) / std::max(1.0, std::abs(s.dW_dt)));
  }
  return worst;
}

}  // namespace vortexlab

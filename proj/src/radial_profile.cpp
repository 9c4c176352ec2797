#include "vortexlab/radial_profile.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Non-derivative part of the interval energy density, with s the midpoint value.
struct Potential {
  CoreModel model;
  double inv_eps2;

  double value(double s, double r) const {
    if (model == CoreModel::GinzburgLandau) {
      const double w = 1.0 - s * s;
      return 0.5 * s * s / (r * r) + 0.25 * w * w * inv_eps2;
    }
    const double sn = std::sin(s), cs = std::cos(s);
    return 0.5 * sn * sn / (r * r) + 0.5 * cs * cs * inv_eps2;
  }
  double d1(double s, double r) const {
    if (model == CoreModel::GinzburgLandau) return s / (r * r) - s * (1.0 - s * s) * inv_eps2;
    return 0.5 * std::sin(2.0 * s) * (1.0 / (r * r) - inv_eps2);
  }
  double d2(double s, double r) const {
    if (model == CoreModel::GinzburgLandau) return 1.0 / (r * r) - (1.0 - 3.0 * s * s) * inv_eps2;
    return std::cos(2.0 * s) * (1.0 / (r * r) - inv_eps2);
  }
};

double total_energy(const std::vector<double>& f, double dr, const Potential& pot) {
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double rm = (i + 0.5) * dr;
    const double d = (f[i + 1] - f[i]) / dr;
    const double s = 0.5 * (f[i] + f[i + 1]);
    e += rm * (0.5 * d * d + pot.value(s, rm));
  }
  return 2.0 * kPi * dr * e;
}

// Solves the tridiagonal system (sub, diag, sup) x = rhs in place (Thomas).
void thomas(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup, std::vector<double>& x) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    x[i] -= w * x[i - 1];
  }
  x[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - sup[i] * x[i + 1]) / diag[i];
}

RadialProfile solve(CoreModel model, double eps, int nodes) {
  if (!(eps > 0.0) || nodes < 16) throw ConfigError("invalid radial minimisation parameters");
  const Potential pot{model, 1.0 / (eps * eps)};
  const double dr = 1.0 / nodes;
  const double top = model == CoreModel::GinzburgLandau ? 1.0 : 0.5 * kPi;
  std::vector<double> f(nodes + 1);
  for (int i = 0; i <= nodes; ++i) {
    const double s = i * dr / eps;
    const double shape = s / std::sqrt(s * s + 2.0);
    f[i] = model == CoreModel::GinzburgLandau ? shape : top * shape;
  }
  f[0] = 0.0;
  f[nodes] = top;

  double energy = total_energy(f, dr, pot);
  const std::size_t n = static_cast<std::size_t>(nodes) - 1;  // unknowns f[1..nodes-1]
  double lambda = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> grad(nodes + 1, 0.0), hd(nodes + 1, 0.0), ho(nodes, 0.0);
    for (int i = 0; i < nodes; ++i) {
      const double rm = (i + 0.5) * dr;
      const double w = 2.0 * kPi * dr * rm;
      const double d = (f[i + 1] - f[i]) / dr;
      const double s = 0.5 * (f[i] + f[i + 1]);
      const double q1 = 0.5 * pot.d1(s, rm);
      const double q2 = 0.25 * pot.d2(s, rm);
      grad[i] += w * (-d / dr + q1);
      grad[i + 1] += w * (d / dr + q1);
      hd[i] += w * (1.0 / (dr * dr) + q2);
      hd[i + 1] += w * (1.0 / (dr * dr) + q2);
      ho[i] += w * (-1.0 / (dr * dr) + q2);
    }
    double gnorm = 0.0;
    for (std::size_t p = 0; p < n; ++p) gnorm = std::max(gnorm, std::abs(grad[p + 1]));
    if (gnorm < 1e-12) break;

    bool accepted = false;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      std::vector<double> sub(n), dg(n), sup(n), step(n);
      for (std::size_t p = 0; p < n; ++p) {
        dg[p] = hd[p + 1] + lambda * std::abs(hd[p + 1]);
        sub[p] = p > 0 ? ho[p] : 0.0;
        sup[p] = p + 1 < n ? ho[p + 1] : 0.0;
        step[p] = -grad[p + 1];
      }
      thomas(sub, dg, sup, step);
      std::vector<double> trial = f;
      for (std::size_t p = 0; p < n; ++p) trial[p + 1] += step[p];
      const double e_new = total_energy(trial, dr, pot);
      if (std::isfinite(e_new) && e_new <= energy + 1e-14 * std::abs(energy)) {
        f = std::move(trial);
        const bool converged = energy - e_new < 1e-15 * std::abs(energy);
        energy = e_new;
        lambda *= 0.3;
        accepted = true;
        if (converged) iter = 1000;
      } else {
        lambda = lambda == 0.0 ? 1e-3 : 4.0 * lambda;
      }
    }
    if (!accepted) break;
  }
  RadialProfile out;
  out.model = model;
  out.epsilon = eps;
  out.dr = dr;
  out.values = std::move(f);
  out.energy = energy;
  return out;
}

}  // namespace

double RadialProfile::operator()(double r) const {
  if (r <= 0.0) return values.front();
  const double x = r / dr;
  const std::size_t i = static_cast<std::size_t>(x);
  if (i + 1 >= values.size()) return values.back();
  const double t = x - static_cast<double>(i);
  return (1.0 - t) * values[i] + t * values[i + 1];
}

const RadialProfile& radial_minimizer(CoreModel model, double epsilon, int nodes) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, int>, std::unique_ptr<RadialProfile>> cache;
  const std::lock_guard lock(mu);
  auto key = std::make_tuple(static_cast<int>(model), epsilon, nodes);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<RadialProfile>(solve(model, epsilon, nodes))).first;
  return *it->second;
}

double gamma_num(CoreModel model, double epsilon) {
  return radial_minimizer(model, epsilon).energy - kPi * std::log(1.0 / epsilon);
}

}  // namespace vortexlab

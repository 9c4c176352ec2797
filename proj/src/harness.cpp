#include "vortexlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <thread>

#include "vortexlab/glmixed.hpp"
#include "vortexlab/llg.hpp"

namespace vortexlab {

using nlohmann::json;

namespace {

Vec2 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("expected a point [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

DomainSpec domain_from_json(const json& j) {
  const auto kind = domain_from_string(j.value("kind", std::string("disk")));
  if (kind == DomainKind::UnitDisk) return DomainSpec::unit_disk();
  const auto e = j.at("extent");
  if (!e.is_array() || e.size() != 4) throw ConfigError("rectangle extent must be [x0, y0, x1, y1]");
  return DomainSpec::rectangle(e[0].get<double>(), e[1].get<double>(), e[2].get<double>(), e[3].get<double>());
}

json domain_to_json(const DomainSpec& d) {
  if (d.kind == DomainKind::UnitDisk) return {{"kind", to_string(d.kind)}};
  return {{"kind", to_string(d.kind)}, {"extent", {d.x_min, d.y_min, d.x_max, d.y_max}}};
}

GridPtr scenario_grid(const Scenario& sc, int n) {
  const auto& d = sc.domain;
  if (d.kind == DomainKind::UnitDisk) return make_grid(n, n, d, sc.bc);
  const double h = (d.x_max - d.x_min) / (n - 1);
  const int ny = static_cast<int>(std::lround((d.y_max - d.y_min) / h)) + 1;
  return make_grid(n, ny, d, sc.bc);
}

double scenario_h(const Scenario& sc, int n) {
  const auto& d = sc.domain;
  return (d.x_max - d.x_min) / (n - 1);
}

VortexSet scenario_vortices(const Scenario& sc) {
  VortexSet v;
  for (std::size_t n = 0; n < sc.vortices.size(); ++n) {
    const auto& s = sc.vortices[n];
    double q = 0.5 * s.polarity * s.d;
    if (n == 0 && sc.bubble_radius) q = -0.5 * s.d;
    v.entries.push_back({s.a, s.d, q});
  }
  return v;
}

struct Series {
  std::vector<double> t;
  std::vector<Vec2> p;
};

Series series(const Trajectory& traj, std::size_t n) {
  Series s;
  for (const auto& smp : traj.samples) {
    if (n >= smp.vortices.size()) continue;
    s.t.push_back(smp.time);
    s.p.push_back(smp.vortices[n].position);
  }
  return s;
}

Vec2 interpolate(const Series& s, double t) {
  auto it = std::lower_bound(s.t.begin(), s.t.end(), t);
  if (it == s.t.begin()) return s.p.front();
  if (it == s.t.end()) return s.p.back();
  const std::size_t k = static_cast<std::size_t>(it - s.t.begin());
  const double t0 = s.t[k - 1], t1 = s.t[k];
  const double w = t1 > t0 ? (t - t0) / (t1 - t0) : 1.0;
  return s.p[k - 1] + w * (s.p[k] - s.p[k - 1]);
}

struct PairDistance {
  double sup{kMissing};
  double l2{kMissing};
};

PairDistance distance(const Series& a, const Series& b) {
  PairDistance out;
  if (a.t.empty() || b.t.empty()) return out;
  const double t0 = std::max(a.t.front(), b.t.front());
  const double t1 = std::min(a.t.back(), b.t.back());
  if (t1 < t0) return out;
  const Series& fine = a.t.size() >= b.t.size() ? a : b;
  std::vector<double> grid;
  for (double t : fine.t)
    if (t >= t0 && t <= t1) grid.push_back(t);
  if (grid.empty() || grid.front() > t0) grid.insert(grid.begin(), t0);
  if (grid.back() < t1) grid.push_back(t1);
  double sup = 0.0, sq = 0.0, prev = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double d = norm(interpolate(a, grid[k]) - interpolate(b, grid[k]));
    sup = std::max(sup, d);
    if (k > 0) sq += 0.5 * (grid[k] - grid[k - 1]) * (d * d + prev * prev);
    prev = d;
  }
  out.sup = sup;
  out.l2 = std::sqrt(sq);
  return out;
}

bool tracks_meet(const std::vector<Series>& tracks, double radius) {
  for (std::size_t m = 0; m < tracks.size(); ++m)
    for (std::size_t n = m + 1; n < tracks.size(); ++n)
      for (std::size_t k = 0; k < tracks[m].t.size(); ++k) {
        const double t = tracks[m].t[k];
        if (tracks[n].t.empty() || t < tracks[n].t.front() || t > tracks[n].t.back()) continue;
        if (norm(tracks[m].p[k] - interpolate(tracks[n], t)) < radius) return true;
      }
  return false;
}

std::vector<std::size_t> nearest_matching(const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
  struct Cand {
    double d;
    std::size_t i, j;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < to.size(); ++j) cands.push_back({norm(from[i] - to[j]), i, j});
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.d < b.d; });
  std::vector<std::size_t> match(from.size(), to.size());
  std::vector<bool> used(to.size(), false);
  for (const auto& c : cands) {
    if (match[c.i] != to.size() || used[c.j]) continue;
    match[c.i] = c.j;
    used[c.j] = true;
  }
  return match;
}

RenormalizedEnergyModel ode_model(const Scenario& sc, const Grid2D& grid) {
  auto model = model_for(grid, sc.boundary_source);
  model.resolution = sc.renorm_resolution;
  return model;
}

Trajectory run_ode(const Scenario& sc, const Grid2D& grid, const VortexSet& v, const std::vector<QJump>& jumps) {
  OdeState s;
  s.vortices = v;
  s.alpha0 = sc.alpha0;
  s.model = ode_model(sc, grid);
  s.kind = sc.model == "llg" ? OdeKind::LLG : OdeKind::GL;
  OdeOptions opts;
  opts.jumps = jumps;
  return ode_integrate(s, sc.t_end, sc.ode_tol, opts);
}

EpsilonResult run_epsilon(const Scenario& sc, std::size_t k, const std::string& dir) {
  const auto start = std::chrono::steady_clock::now();
  EpsilonResult res;
  res.epsilon = sc.epsilons[k];
  res.grid = sc.grid_sizes[k];
  try {
    const auto grid = scenario_grid(sc, res.grid);
    const double h = grid->h();
    const VortexSet v0 = scenario_vortices(sc);
    validate(v0, *grid);

    SeedOptions so;
    so.c_core = sc.c_core;
    so.boundary_source = sc.boundary_source;

    RunConfig cfg;
    cfg.epsilon = res.epsilon;
    cfg.alpha0 = sc.alpha0;
    cfg.dt = sc.dt_factor > 0.0 ? sc.dt_factor * h * h : 0.0;
    cfg.t_end = sc.t_end;
    cfg.scheme = sc.scheme;
    cfg.r_min = sc.r_min;
    cfg.boundary_source = sc.boundary_source;
    cfg.record_excess_energy = sc.record_excess_energy;
    cfg.field_dir = dir.empty() || sc.field_stride <= 0 ? std::string() : dir;
    cfg.field_stride = sc.field_stride;
    if (sc.snapshot_stride > 0) {
      cfg.snapshot_stride = sc.snapshot_stride;
    } else {
      const double dt = cfg.dt > 0.0 ? cfg.dt
                        : sc.model == "llg" ? llg_stable_dt(h, res.epsilon, cfg.alpha(), sc.scheme)
                                            : gl_stable_dt(h, res.epsilon, cfg.alpha(), sc.scheme);
      cfg.snapshot_stride = std::max(1, static_cast<int>(sc.t_end / dt / 200.0));
    }

    try {
      if (sc.model == "llg") {
        std::vector<int> pol;
        for (const auto& s : sc.vortices) pol.push_back(s.polarity);
        DirectorField m0 = sc.bubble_radius
                               ? seed_bubbling_field(grid, v0[0].a, v0[0].d, res.epsilon, *sc.bubble_radius * res.epsilon, so)
                               : seed_vortex_field(grid, v0, res.epsilon, pol, so);
        if (sc.perturbation) res.injected_amplitude = inject_excess_energy(m0, res.epsilon, *sc.perturbation);
        res.pde = llg_run(cfg, m0);
      } else {
        ComplexField u0 = seed_gl_field(grid, v0, res.epsilon, so);
        if (sc.perturbation) res.injected_amplitude = inject_excess_energy(u0, res.epsilon, *sc.perturbation);
        res.pde = gl_run(cfg, u0);
      }
      res.ok = true;
    } catch (const SimulationFailure& e) {
      res.pde = e.partial();
      res.error = e.what();
      res.error_kind = "numerical";
    }
    res.stop = to_string(res.pde.stop);
    res.events = res.pde.events;
    for (const auto& s : res.pde.samples)
      if (std::isfinite(s.excess_energy)) res.excess_energy.emplace_back(s.time, s.excess_energy);

    // PDE vortex n -> scenario vortex, nearest at t = 0.
    std::vector<Vec2> seeded, read;
    for (const auto& e : v0) seeded.push_back(e.a);
    if (!res.pde.empty())
      for (const auto& p : res.pde.samples.front().vortices) read.push_back(p.position);
    const auto to_ode = nearest_matching(read, seeded);

    std::vector<QJump> jumps;
    std::vector<double> q(v0.size());
    for (std::size_t n = 0; n < v0.size(); ++n) q[n] = v0[n].q;
    for (const auto& e : res.events) {
      if (e.vortex >= to_ode.size() || to_ode[e.vortex] >= v0.size()) continue;
      const std::size_t n = to_ode[e.vortex];
      q[n] += e.dq;
      const double t = 0.5 * (e.t0 + e.t1);
      jumps.push_back({t, n, q[n]});
      res.alignment.push_back({e.t1, t, e.vortex, e.dq});
    }

    const double r_min = sc.r_min > 0.0 ? sc.r_min : 8.0 * res.epsilon;
    res.ode = run_ode(sc, *grid, v0, jumps);
    if (!res.pde.empty()) {
      const auto cmp = compare_tracks(res.pde, res.ode, r_min);
      res.sup_distance = cmp.sup;
      res.l2_distance = cmp.l2_distance.empty() ? kMissing
                                                 : std::sqrt(std::accumulate(cmp.l2_distance.begin(),
                                                                             cmp.l2_distance.end(), 0.0,
                                                                             [](double a, double b) { return a + b * b; }));
      if (!jumps.empty()) {
        const auto plain = run_ode(sc, *grid, v0, {});
        res.sup_distance_no_jump = compare_tracks(res.pde, plain, r_min).sup;
      }
    }
    if (!dir.empty()) {
      write_trajectory_csv(dir + "/pde.csv", res.pde);
      write_trajectory_csv(dir + "/ode.csv", res.ode);
      write_events_csv(dir + "/events.csv", res.events);
    }
  } catch (const ConfigError& e) {
    res.ok = false;
    res.error = e.what();
    res.error_kind = "config";
  } catch (const NumericalError& e) {
    res.ok = false;
    res.error = e.what();
    res.error_kind = "numerical";
  }
  res.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

Scenario gl_motion_base(const std::string& name) {
  Scenario sc;
  sc.name = name;
  sc.model = "gl";
  sc.domain = DomainSpec::unit_disk();
  sc.bc = BoundaryKind::Dirichlet;
  sc.vortices = {{{0.5, 0.0}, 1, 1}};
  sc.boundary_source = make_vortices({{{0.0, 0.0}, 1}});
  sc.epsilons = {1.0 / 16, 1.0 / 32, 1.0 / 64};
  sc.grid_sizes = {129, 257, 513};
  sc.alpha0 = 1.0;
  sc.t_end = 0.25;
  sc.dt_factor = 0.25;
  sc.snapshot_stride = 0;
  sc.r_min = 0.1;
  sc.c_core = 3.0;
  sc.record_excess_energy = true;
  return sc;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  Scenario sc;
  sc.schema = j.value("schema", 1);
  if (sc.schema != 1) throw ConfigError("unsupported scenario schema " + std::to_string(sc.schema));
  sc.name = j.value("name", std::string());
  sc.model = j.value("model", std::string("gl"));
  if (j.contains("domain")) sc.domain = domain_from_json(j.at("domain"));
  sc.bc = boundary_from_string(j.value("bc", std::string("dirichlet")));
  for (const auto& v : j.value("vortices", json::array()))
    sc.vortices.push_back({vec_from_json(v.at("a")), v.value("d", 1), v.value("polarity", 1)});
  std::vector<std::pair<Vec2, int>> src;
  for (const auto& v : j.value("boundary_source", json::array())) src.emplace_back(vec_from_json(v.at("a")), v.value("d", 1));
  sc.boundary_source = make_vortices(src);
  sc.epsilons = j.value("epsilons", std::vector<double>{});
  sc.grid_sizes = j.value("grid_sizes", std::vector<int>{});
  sc.alpha0 = j.value("alpha0", sc.alpha0);
  sc.t_end = j.value("t_end", sc.t_end);
  sc.dt_factor = j.value("dt_factor", sc.dt_factor);
  sc.scheme = time_scheme_from_string(j.value("scheme", to_string(sc.scheme)));
  sc.snapshot_stride = j.value("snapshot_stride", sc.snapshot_stride);
  sc.field_stride = j.value("field_stride", sc.field_stride);
  sc.r_min = j.value("r_min", sc.r_min);
  sc.c_core = j.value("c_core", sc.c_core);
  if (j.contains("perturbation") && !j.at("perturbation").is_null()) {
    PerturbationSpec p;
    p.target_surplus = j.at("perturbation").value("target_surplus", p.target_surplus);
    p.wavenumber = j.at("perturbation").value("wavenumber", p.wavenumber);
    sc.perturbation = p;
  }
  if (j.contains("bubble") && !j.at("bubble").is_null()) {
    sc.bubble_radius = j.at("bubble").value("radius_eps", 1.0);
    sc.c_core = j.at("bubble").value("c_core", sc.c_core);
  }
  sc.ode_tol = j.value("ode_tol", sc.ode_tol);
  sc.record_excess_energy = j.value("record_excess_energy", sc.record_excess_energy);
  sc.renorm_resolution = j.value("renorm_resolution", sc.renorm_resolution);
  sc.output = j.value("output", std::string());
  return sc;
}

json to_json(const Scenario& sc) {
  json j;
  j["schema"] = sc.schema;
  j["name"] = sc.name;
  j["model"] = sc.model;
  j["domain"] = domain_to_json(sc.domain);
  j["bc"] = to_string(sc.bc);
  j["vortices"] = json::array();
  for (const auto& v : sc.vortices) j["vortices"].push_back({{"a", {v.a.x, v.a.y}}, {"d", v.d}, {"polarity", v.polarity}});
  j["boundary_source"] = json::array();
  for (const auto& v : sc.boundary_source) j["boundary_source"].push_back({{"a", {v.a.x, v.a.y}}, {"d", v.d}});
  j["epsilons"] = sc.epsilons;
  j["grid_sizes"] = sc.grid_sizes;
  j["alpha0"] = sc.alpha0;
  j["t_end"] = sc.t_end;
  j["dt_factor"] = sc.dt_factor;
  j["scheme"] = to_string(sc.scheme);
  j["snapshot_stride"] = sc.snapshot_stride;
  j["field_stride"] = sc.field_stride;
  j["r_min"] = sc.r_min;
  j["c_core"] = sc.c_core;
  j["perturbation"] = sc.perturbation ? json{{"target_surplus", sc.perturbation->target_surplus},
                                             {"wavenumber", sc.perturbation->wavenumber}}
                                      : json(nullptr);
  j["bubble"] = sc.bubble_radius ? json{{"radius_eps", *sc.bubble_radius}, {"c_core", sc.c_core}} : json(nullptr);
  j["ode_tol"] = sc.ode_tol;
  j["record_excess_energy"] = sc.record_excess_energy;
  j["renorm_resolution"] = sc.renorm_resolution;
  j["output"] = sc.output;
  return j;
}

void validate(const Scenario& sc) {
  if (sc.name.empty()) throw ConfigError("scenario needs a name");
  if (sc.model != "gl" && sc.model != "llg") throw ConfigError("model must be gl or llg");
  if (sc.vortices.empty()) throw ConfigError("scenario has no vortices");
  for (const auto& v : sc.vortices) {
    if (std::abs(v.d) != 1) throw ConfigError("vortex degree must be +-1");
    if (std::abs(v.polarity) != 1) throw ConfigError("polarity must be +-1");
  }
  if (sc.epsilons.empty()) throw ConfigError("empty epsilon list");
  if (sc.grid_sizes.size() != sc.epsilons.size()) throw ConfigError("one grid size per epsilon required");
  for (std::size_t k = 0; k < sc.epsilons.size(); ++k) {
    const double eps = sc.epsilons[k];
    if (!(eps > 0.0 && eps <= 0.5)) throw ConfigError("epsilon must lie in (0, 1/2]");
    if (k > 0 && !(eps < sc.epsilons[k - 1])) throw ConfigError("epsilon list must be strictly decreasing");
    if (sc.grid_sizes[k] < 16) throw ConfigError("grid too coarse");
    if (scenario_h(sc, sc.grid_sizes[k]) > eps / 4.0 * (1.0 + 1e-12))
      throw ConfigError("grid does not resolve epsilon (h > eps/4)");
  }
  if (!(sc.alpha0 >= 0.0)) throw ConfigError("alpha0 must be non-negative");
  if (!(sc.t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (sc.bubble_radius && sc.model != "llg") throw ConfigError("bubble seeds need the llg model");
  if (sc.bubble_radius && !(*sc.bubble_radius > 0.0)) throw ConfigError("bubble radius must be positive");
  if (!(sc.ode_tol >= 1e-12 && sc.ode_tol <= 1e-4)) throw ConfigError("ode_tol must lie in [1e-12, 1e-4]");
}

std::vector<std::string> builtin_scenario_names() {
  return {"gl-motion-law", "gl-motion-law-excess", "llg-gyro-sign", "llg-bubbling"};
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "gl-motion-law") return gl_motion_base(name);
  if (name == "gl-motion-law-excess") {
    auto sc = gl_motion_base(name);
    sc.perturbation = PerturbationSpec{1.0, 2};
    return sc;
  }
  if (name == "llg-gyro-sign" || name == "llg-bubbling") {
    auto sc = gl_motion_base(name);
    sc.model = "llg";
    sc.epsilons = {1.0 / 16};
    sc.grid_sizes = {129};
    sc.record_excess_energy = false;
    if (name == "llg-gyro-sign") {
      sc.vortices = {{{0.3, 0.0}, 1, 1}};
      sc.t_end = 0.25;
    } else {
      sc.vortices = {{{0.3, 0.0}, 1, 1}};
      sc.bubble_radius = 1.0;
      sc.c_core = 4.0;
      sc.t_end = 0.15;
      sc.snapshot_stride = 40;
    }
    return sc;
  }
  throw ConfigError("unknown scenario: " + name);
}

TrackComparison compare_tracks(const Trajectory& pde, const Trajectory& ode, double r_min) {
  TrackComparison out;
  if (pde.empty() || ode.empty()) throw ConfigError("compare_tracks needs two non-empty trajectories");
  std::vector<Vec2> a, b;
  for (const auto& p : pde.samples.front().vortices) a.push_back(p.position);
  for (const auto& p : ode.samples.front().vortices) b.push_back(p.position);
  if (a.size() != b.size()) throw ConfigError("tracks differ in vortex count at t = 0");
  out.matching = nearest_matching(a, b);
  std::vector<Series> sp, so;
  for (std::size_t n = 0; n < a.size(); ++n) sp.push_back(series(pde, n));
  for (std::size_t n = 0; n < b.size(); ++n) so.push_back(series(ode, n));
  out.t_begin = std::max(pde.samples.front().time, ode.samples.front().time);
  out.t_end = std::min(pde.samples.back().time, ode.samples.back().time);
  for (std::size_t n = 0; n < a.size(); ++n) {
    const auto d = distance(sp[n], so[out.matching[n]]);
    out.sup_distance.push_back(d.sup);
    out.l2_distance.push_back(d.l2);
    if (std::isfinite(d.sup)) out.sup = std::max(out.sup, d.sup);
  }
  out.identity_swap_risk = tracks_meet(sp, 2.0 * r_min) || tracks_meet(so, 2.0 * r_min);
  return out;
}

bool ComparisonReport::complete() const {
  return std::all_of(runs.begin(), runs.end(), [](const EpsilonResult& r) { return r.ok; });
}

ComparisonReport run_scenario(const Scenario& sc, int threads) {
  validate(sc);
  ComparisonReport report;
  report.scenario = sc.name;
  const std::size_t count = sc.epsilons.size();
  std::vector<std::string> dirs(count);
  if (!sc.output.empty()) {
    for (std::size_t k = 0; k < count; ++k) {
      dirs[k] = sc.output + "/eps_" + std::to_string(k);
      std::filesystem::create_directories(dirs[k]);
    }
  }
  report.runs.resize(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) report.runs[k] = run_epsilon(sc, k, dirs[k]);
  };
  const int workers = std::clamp(threads, 1, static_cast<int>(count));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  report.monotone = count >= 2 && report.complete();
  for (std::size_t k = 1; k < count && report.monotone; ++k)
    report.monotone = report.runs[k].sup_distance < report.runs[k - 1].sup_distance;

  if (!sc.output.empty()) {
    std::ofstream f(sc.output + "/report.json");
    if (!f) throw ConfigError("cannot write " + sc.output + "/report.json");
    f << to_json(report).dump(2) << "\n";
    std::ofstream s(sc.output + "/scenario.json");
    s << to_json(sc).dump(2) << "\n";
  }
  return report;
}

json to_json(const ComparisonReport& r) {
  json j;
  j["scenario"] = r.scenario;
  j["monotone"] = r.monotone;
  j["complete"] = r.complete();
  j["runs"] = json::array();
  for (const auto& run : r.runs) {
    json e;
    e["epsilon"] = run.epsilon;
    e["grid"] = run.grid;
    e["ok"] = run.ok;
    if (!run.ok) {
      e["error"] = run.error;
      e["error_kind"] = run.error_kind;
    }
    e["stop"] = run.stop;
    e["sup_distance"] = nullable(run.sup_distance);
    e["l2_distance"] = nullable(run.l2_distance);
    e["sup_distance_no_jump"] = nullable(run.sup_distance_no_jump);
    e["injected_amplitude"] = nullable(run.injected_amplitude);
    e["dt"] = run.pde.dt;
    e["dt_reductions"] = run.pde.dt_reductions;
    e["excess_energy"] = json::array();
    for (const auto& [t, v] : run.excess_energy) e["excess_energy"].push_back({t, v});
    e["events"] = json::array();
    for (const auto& ev : run.events)
      e["events"].push_back({{"t0", ev.t0}, {"t1", ev.t1}, {"vortex", ev.vortex}, {"x", ev.position.x},
                             {"y", ev.position.y}, {"dq", ev.dq}, {"d_omega", ev.d_omega}, {"d_energy", ev.d_energy}});
    e["alignment"] = json::array();
    for (const auto& a : run.alignment)
      e["alignment"].push_back(
          {{"pde_time", a.pde_time}, {"ode_jump_time", a.ode_jump_time}, {"vortex", a.vortex}, {"dq", a.dq}});
    e["runtime_seconds"] = run.runtime_seconds;
    j["runs"].push_back(e);
  }
  return j;
}

}  // namespace vortexlab

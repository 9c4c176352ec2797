#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vortexlab/glmixed.hpp"
#include "vortexlab/harness.hpp"
#include "vortexlab/llg.hpp"
#include "vortexlab/motion.hpp"
#include "vortexlab/snapshot.hpp"

using namespace vortexlab;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kPartial = 4 };

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("not a number list: " + s);
    }
  }
  return out;
}

struct GeometryArgs {
  std::string domain{"disk"};
  std::string extent{"0,0,1,1"};
  std::string bc{"dirichlet"};
  std::vector<std::string> sources;

  void add(CLI::App* app) {
    app->add_option("--domain", domain, "disk or rectangle")->check(CLI::IsMember({"disk", "rectangle"}));
    app->add_option("--extent", extent, "rectangle x0,y0,x1,y1");
    app->add_option("--bc", bc, "dirichlet or neumann")->check(CLI::IsMember({"dirichlet", "neumann"}));
    app->add_option("--source", sources, "Dirichlet data generator x,y,d (repeatable)");
  }
  DomainSpec spec() const {
    if (domain == "disk") return DomainSpec::unit_disk();
    const auto e = split_numbers(extent);
    if (e.size() != 4) throw ConfigError("--extent needs four numbers");
    return DomainSpec::rectangle(e[0], e[1], e[2], e[3]);
  }
  BoundaryKind boundary() const { return boundary_from_string(bc); }
  VortexSet source() const {
    std::vector<std::pair<Vec2, int>> pts;
    for (const auto& s : sources) {
      const auto v = split_numbers(s);
      if (v.size() != 3) throw ConfigError("--source expects x,y,d");
      pts.emplace_back(Vec2{v[0], v[1]}, static_cast<int>(v[2]));
    }
    return make_vortices(pts);
  }
};

/// x,y,d[,extra] per entry; extra is the polarity (PDE) or q (ODE).
std::vector<std::array<double, 4>> parse_vortices(const std::vector<std::string>& items, double extra_default) {
  std::vector<std::array<double, 4>> out;
  for (const auto& s : items) {
    const auto v = split_numbers(s);
    if (v.size() != 3 && v.size() != 4) throw ConfigError("--vortex expects x,y,d[,polarity|q]");
    out.push_back({v[0], v[1], v[2], v.size() == 4 ? v[3] : extra_default});
  }
  if (out.empty()) throw ConfigError("at least one --vortex is required");
  return out;
}

struct SimulateArgs {
  GeometryArgs geo;
  std::vector<std::string> vortices;
  int n{129};
  double eps{0.0625};
  double alpha0{1.0};
  double alpha{-1.0};
  double t_end{0.25};
  double dt{0.0};
  double dt_factor{0.0};
  std::string scheme{"explicit-ll-rk4"};
  int stride{50};
  int field_stride{0};
  double r_min{0.0};
  double c_core{3.0};
  double perturb{0.0};
  int wavenumber{2};
  double bubble{0.0};
  bool excess{false};
  bool dissipative_only{false};

  void add(CLI::App* app, bool llg) {
    geo.add(app);
    app->add_option("--vortex", vortices, "x,y,d[,polarity] (repeatable)")->required();
    app->add_option("-n,--nodes", n, "nodes per side");
    app->add_option("--eps", eps, "epsilon");
    app->add_option("--alpha0", alpha0, "alpha_eps = alpha0 / log(1/eps)");
    app->add_option("--alpha", alpha, "use this alpha_eps verbatim");
    app->add_option("--t-end", t_end);
    app->add_option("--dt", dt, "time step (0: stability bound)");
    app->add_option("--dt-factor", dt_factor, "time step as a multiple of h^2");
    app->add_option("--scheme", scheme)->check(CLI::IsMember({"explicit-ll-rk4", "rk4", "imex"}));
    app->add_option("--stride", stride, "steps between samples");
    app->add_option("--field-stride", field_stride, "samples between .fld snapshots");
    app->add_option("--r-min", r_min, "collision / escape radius (0: 8 eps)");
    app->add_option("--c-core", c_core, "core radius in units of eps");
    app->add_option("--perturb", perturb, "inject this much excess energy");
    app->add_option("--wavenumber", wavenumber);
    app->add_flag("--excess", excess, "record the excess energy");
    if (llg)
      app->add_option("--bubble", bubble, "reversed bubble radius (units of eps) in the first vortex");
    else
      app->add_flag("--dissipative-only", dissipative_only, "drop the Schroedinger term");
  }
};

int simulate(const SimulateArgs& a, bool llg, const std::string& out) {
  const auto spec = a.geo.spec();
  GridPtr grid;
  if (spec.kind == DomainKind::UnitDisk) {
    grid = make_grid(a.n, a.n, spec, a.geo.boundary());
  } else {
    const double h = (spec.x_max - spec.x_min) / (a.n - 1);
    grid = make_grid(a.n, static_cast<int>(std::lround((spec.y_max - spec.y_min) / h)) + 1, spec, a.geo.boundary());
  }
  const auto vs = parse_vortices(a.vortices, 1.0);
  VortexSet v;
  std::vector<int> pol;
  for (const auto& e : vs) {
    v.entries.push_back({{e[0], e[1]}, static_cast<int>(e[2]), 0.5 * e[2] * e[3]});
    pol.push_back(static_cast<int>(e[3]));
  }
  SeedOptions so;
  so.c_core = a.c_core;
  so.boundary_source = a.geo.source();

  RunConfig cfg;
  cfg.epsilon = a.eps;
  cfg.alpha0 = a.alpha0;
  if (a.alpha >= 0.0) cfg.alpha_override = a.alpha;
  cfg.dt = a.dt > 0.0 ? a.dt : a.dt_factor * grid->h() * grid->h();
  cfg.t_end = a.t_end;
  cfg.scheme = time_scheme_from_string(a.scheme);
  cfg.snapshot_stride = a.stride;
  cfg.r_min = a.r_min;
  cfg.conservative_term = !a.dissipative_only;
  cfg.boundary_source = so.boundary_source;
  cfg.record_excess_energy = a.excess;
  cfg.field_dir = a.field_stride > 0 ? out : std::string();
  cfg.field_stride = a.field_stride;
  PerturbationSpec p{a.perturb, a.wavenumber};

  Trajectory traj;
  int code = kOk;
  try {
    if (llg) {
      DirectorField m = a.bubble > 0.0 ? seed_bubbling_field(grid, v[0].a, v[0].d, a.eps, a.bubble * a.eps, so)
                                       : seed_vortex_field(grid, v, a.eps, pol, so);
      if (a.perturb > 0.0) inject_excess_energy(m, a.eps, p);
      DirectorField final_state = m;
      traj = llg_run(cfg, m, &final_state);
      write_field(out + "/final.fld", final_state, traj.samples.back().time, a.eps);
    } else {
      ComplexField u = seed_gl_field(grid, v, a.eps, so);
      if (a.perturb > 0.0) inject_excess_energy(u, a.eps, p);
      ComplexField final_state = u;
      traj = gl_run(cfg, u, &final_state);
      write_field(out + "/final.fld", final_state, traj.samples.back().time, a.eps);
    }
  } catch (const SimulationFailure& e) {
    std::cerr << "numerical failure: " << e.what() << " (partial trajectory written)\n";
    traj = e.partial();
    code = kPartial;
  }
  write_trajectory_csv(out + "/trajectory.csv", traj);
  if (llg) write_events_csv(out + "/events.csv", traj.events);
  std::printf("samples %zu  stop %s  dt %.6g  reductions %d  events %zu\n", traj.samples.size(),
              to_string(traj.stop).c_str(), traj.dt, traj.dt_reductions, traj.events.size());
  return code;
}

struct OdeArgs {
  GeometryArgs geo;
  std::string plane{"bounded"};
  std::vector<std::string> vortices;
  std::vector<std::string> jumps;
  std::string kind{"llg"};
  double alpha0{0.0};
  double t_end{1.0};
  double tol{1e-8};
  double max_step{0.0};
  int resolution{129};
};

RenormalizedEnergyModel energy_model(const GeometryArgs& geo, bool free_plane, int resolution) {
  if (free_plane) return RenormalizedEnergyModel::free_plane();
  auto spec = geo.spec();
  auto model = spec.kind == DomainKind::UnitDisk
                   ? RenormalizedEnergyModel::unit_disk(geo.boundary(), geo.source())
                   : RenormalizedEnergyModel::rectangle_domain(spec, geo.boundary(), geo.source());
  model.resolution = resolution;
  return model;
}

int ode(const OdeArgs& a, const std::string& out) {
  OdeState s;
  for (const auto& e : parse_vortices(a.vortices, 0.5)) s.vortices.entries.push_back({{e[0], e[1]}, static_cast<int>(e[2]), e[3]});
  s.alpha0 = a.alpha0;
  s.kind = ode_kind_from_string(a.kind);
  s.model = energy_model(a.geo, a.plane == "free", a.resolution);
  OdeOptions opts;
  opts.max_step = a.max_step;
  for (const auto& j : a.jumps) {
    const auto v = split_numbers(j);
    if (v.size() != 3) throw ConfigError("--jump expects t,vortex,q");
    opts.jumps.push_back({v[0], static_cast<std::size_t>(v[1]), v[2]});
  }
  const auto traj = ode_integrate(s, a.t_end, a.tol, opts);
  write_trajectory_csv(out + "/ode.csv", traj);
  std::printf("samples %zu  stop %s  decay-check %.3g\n", traj.samples.size(), to_string(traj.stop).c_str(),
              a.alpha0 > 0.0 ? energy_decay_check(traj) : 0.0);
  return traj.stop == StopReason::EndTime ? kOk : kPartial;
}

int renorm(const GeometryArgs& geo, bool free_plane, const std::vector<std::string>& vortices, int resolution,
           const std::string& gradient) {
  VortexSet v;
  for (const auto& e : parse_vortices(vortices, 0.5)) v.entries.push_back({{e[0], e[1]}, static_cast<int>(e[2]), e[3]});
  auto model = energy_model(geo, free_plane, resolution);
  if (gradient == "fd") model.gradient = GradientMethod::FiniteDifference;
  if (gradient == "identity") model.gradient = GradientMethod::Identity;
  const auto ev = evaluate_renormalized_energy(v, model);
  json j;
  j["W"] = ev.W;
  j["method"] = ev.method;
  j["grad"] = json::array();
  for (const auto& g : grad_W(v, model)) j["grad"].push_back({g.x, g.y});
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int compare(const std::string& pde, const std::string& ode, double r_min) {
  const auto c = compare_tracks(read_trajectory_csv(pde), read_trajectory_csv(ode), r_min);
  json j;
  j["sup"] = c.sup;
  j["sup_distance"] = c.sup_distance;
  j["l2_distance"] = c.l2_distance;
  j["matching"] = c.matching;
  j["t_begin"] = c.t_begin;
  j["t_end"] = c.t_end;
  j["identity_swap_risk"] = c.identity_swap_risk;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

Scenario load_scenario(const std::string& what) {
  if (std::filesystem::exists(what)) {
    std::ifstream f(what);
    json j;
    try {
      f >> j;
    } catch (const json::exception& e) {
      throw ConfigError(std::string("malformed scenario file: ") + e.what());
    }
    return scenario_from_json(j);
  }
  return builtin_scenario(what);
}

int scenario_run(const std::string& what, const std::string& out, int threads, bool out_given) {
  auto sc = load_scenario(what);
  if (out_given || sc.output.empty()) sc.output = out + "/" + sc.name;
  const auto report = run_scenario(sc, threads);
  for (const auto& r : report.runs) {
    std::printf("eps %-10.6g grid %4d  %-8s stop %-16s sup %.6g", r.epsilon, r.grid, r.ok ? "ok" : "FAILED",
                r.stop.c_str(), r.sup_distance);
    if (std::isfinite(r.sup_distance_no_jump)) std::printf("  no-jump %.6g", r.sup_distance_no_jump);
    std::printf("  events %zu  %.1fs\n", r.events.size(), r.runtime_seconds);
    if (!r.ok) std::printf("  %s error: %s\n", r.error_kind.c_str(), r.error.c_str());
  }
  std::printf("monotone %s  report %s/report.json\n", report.monotone ? "yes" : "no", sc.output.c_str());
  return report.complete() ? kOk : kPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vortexlab: vortex dynamics in micromagnetics and mixed Ginzburg-Landau"};
  app.require_subcommand(1);
  int threads = 1;
  std::string out = "out";
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  auto* out_opt = app.add_option("--out", out, "output directory");
  app.add_option("--seed", seed, "recorded with the outputs; all pipelines are deterministic");

  SimulateArgs llg_args, gl_args;
  auto* sim_llg = app.add_subcommand("simulate-llg", "integrate the LLG equation");
  llg_args.add(sim_llg, true);
  auto* sim_gl = app.add_subcommand("simulate-gl", "integrate the mixed GL equation");
  gl_args.add(sim_gl, false);

  OdeArgs ode_args;
  auto* ode_cmd = app.add_subcommand("ode", "integrate the point-vortex ODE");
  ode_args.geo.add(ode_cmd);
  ode_cmd->add_option("--plane", ode_args.plane, "free or bounded")->check(CLI::IsMember({"free", "bounded"}));
  ode_cmd->add_option("--vortex", ode_args.vortices, "x,y,d[,q] (repeatable)")->required();
  ode_cmd->add_option("--jump", ode_args.jumps, "t,vortex,q (repeatable)");
  ode_cmd->add_option("--kind", ode_args.kind)->check(CLI::IsMember({"llg", "gl"}));
  ode_cmd->add_option("--alpha0", ode_args.alpha0);
  ode_cmd->add_option("--t-end", ode_args.t_end);
  ode_cmd->add_option("--tol", ode_args.tol);
  ode_cmd->add_option("--max-step", ode_args.max_step);
  ode_cmd->add_option("--resolution", ode_args.resolution, "renormalized-energy quadrature resolution");

  GeometryArgs renorm_geo;
  std::string renorm_plane = "free", renorm_gradient = "auto";
  std::vector<std::string> renorm_vortices;
  int renorm_resolution = 257;
  auto* renorm_cmd = app.add_subcommand("renorm", "evaluate W and its gradient");
  renorm_geo.add(renorm_cmd);
  renorm_cmd->add_option("--plane", renorm_plane)->check(CLI::IsMember({"free", "bounded"}));
  renorm_cmd->add_option("--vortex", renorm_vortices, "x,y,d (repeatable)")->required();
  renorm_cmd->add_option("--resolution", renorm_resolution);
  renorm_cmd->add_option("--gradient", renorm_gradient)->check(CLI::IsMember({"auto", "fd", "identity"}));

  std::string cmp_pde, cmp_ode;
  double cmp_rmin = 1e-3;
  auto* cmp_cmd = app.add_subcommand("compare", "distance between a PDE and an ODE trajectory CSV");
  cmp_cmd->add_option("pde", cmp_pde)->required()->check(CLI::ExistingFile);
  cmp_cmd->add_option("ode", cmp_ode)->required()->check(CLI::ExistingFile);
  cmp_cmd->add_option("--r-min", cmp_rmin);

  auto* sc_cmd = app.add_subcommand("scenario", "built-in or JSON experiments");
  sc_cmd->require_subcommand(1);
  auto* sc_list = sc_cmd->add_subcommand("list", "list built-in scenarios");
  std::string sc_name;
  bool sc_dump = false;
  sc_list->add_flag("--json", sc_dump, "print the scenario definitions");
  auto* sc_run = sc_cmd->add_subcommand("run", "run a built-in scenario or a scenario file");
  sc_run->add_option("scenario", sc_name, "name or JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    const bool writes = sim_llg->parsed() || sim_gl->parsed() || ode_cmd->parsed();
    if (writes) {
      std::filesystem::create_directories(out);
      std::ofstream(out + "/seed.txt") << seed << "\n";
    }
    if (sim_llg->parsed()) return simulate(llg_args, true, out);
    if (sim_gl->parsed()) return simulate(gl_args, false, out);
    if (ode_cmd->parsed()) return ode(ode_args, out);
    if (renorm_cmd->parsed()) return renorm(renorm_geo, renorm_plane == "free", renorm_vortices, renorm_resolution,
                                            renorm_gradient);
    if (cmp_cmd->parsed()) return compare(cmp_pde, cmp_ode, cmp_rmin);
    if (sc_list->parsed()) {
      for (const auto& name : builtin_scenario_names()) {
        if (sc_dump)
          std::cout << to_json(builtin_scenario(name)).dump(2) << "\n";
        else
          std::cout << name << "\n";
      }
      return kOk;
    }
    if (sc_run->parsed()) return scenario_run(sc_name, out, threads, out_opt->count() > 0);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}

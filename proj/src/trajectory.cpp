#include "vortexlab/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

const char* kHeader =
    "time,vortex,x,y,degree,q,j_mass,omega_mass,q_hat,vx,vy,total_energy,excess_energy,dissipated,W,"
    "residual_1,residual_2,residual_3,dW_dt";

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse(const std::string& s) {
  if (s.empty()) return kMissing;
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw ConfigError("malformed number in trajectory CSV: " + s);
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::EndTime: return "end-time";
    case StopReason::Collision: return "collision";
    case StopReason::BoundaryEscape: return "boundary-escape";
    case StopReason::VortexLost: return "vortex-lost";
  }
  return "unknown";
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(samples.size());
  for (const auto& s : samples) t.push_back(s.time);
  return t;
}

std::vector<Vec2> Trajectory::track(std::size_t n) const {
  std::vector<Vec2> out;
  for (const auto& s : samples) {
    if (n < s.vortices.size()) out.push_back(s.vortices[n].position);
  }
  return out;
}

TrackPoint to_track_point(const VortexReading& r) {
  TrackPoint p;
  p.position = r.position;
  p.degree = r.degree;
  p.j_mass = r.jacobian_mass;
  p.window = r.window_radius;
  // GL readings carry no vorticity (q_hat is never 0 once set).
  if (r.q_hat != 0.0) {
    p.omega_mass = r.vorticity_mass;
    p.q_hat = r.q_hat;
    p.q = r.q_hat;
  } else {
    p.q = 0.5 * r.degree;
  }
  return p;
}

std::vector<TrackPoint> match_to_previous(const std::vector<TrackPoint>& previous, std::vector<TrackPoint> current) {
  struct Pair {
    double dist;
    std::size_t prev, cur;
  };
  std::vector<Pair> pairs;
  for (std::size_t p = 0; p < previous.size(); ++p) {
    for (std::size_t c = 0; c < current.size(); ++c) {
      pairs.push_back({norm(previous[p].position - current[c].position), p, c});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.dist < b.dist; });
  std::vector<int> slot_of(current.size(), -1);
  std::vector<bool> taken(previous.size(), false);
  for (const Pair& pr : pairs) {
    if (taken[pr.prev] || slot_of[pr.cur] >= 0) continue;
    taken[pr.prev] = true;
    slot_of[pr.cur] = static_cast<int>(pr.prev);
  }
  std::vector<TrackPoint> out;
  std::vector<std::pair<int, std::size_t>> order;
  for (std::size_t c = 0; c < current.size(); ++c) {
    const int key = slot_of[c] >= 0 ? slot_of[c] : static_cast<int>(previous.size() + c);
    order.push_back({key, c});
  }
  std::sort(order.begin(), order.end());
  for (const auto& [key, c] : order) out.push_back(current[c]);
  return out;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << kHeader << "\n";
  for (const auto& s : traj.samples) {
    const std::string tail = num(s.total_energy) + "," + num(s.excess_energy) + "," + num(s.dissipated) + "," +
                             num(s.W) + "," + num(s.residuals[0]) + "," + num(s.residuals[1]) + "," +
                             num(s.residuals[2]) + "," + num(s.dW_dt);
    if (s.vortices.empty()) {
      out << num(s.time) << ",-1,,,,,,,,,," << tail << "\n";
      continue;
    }
    for (std::size_t n = 0; n < s.vortices.size(); ++n) {
      const TrackPoint& p = s.vortices[n];
      out << num(s.time) << "," << n << "," << num(p.position.x) << "," << num(p.position.y) << "," << p.degree
          << "," << num(p.q) << "," << num(p.j_mass) << "," << num(p.omega_mass) << "," << num(p.q_hat) << ","
          << num(p.velocity.x) << "," << num(p.velocity.y) << "," << tail << "\n";
    }
  }
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw ConfigError("unexpected trajectory CSV header in " + path);
  Trajectory traj;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 19) throw ConfigError("trajectory CSV row has " + std::to_string(c.size()) + " cells");
    const double t = parse(c[0]);
    if (traj.samples.empty() || traj.samples.back().time != t) {
      if (!traj.samples.empty() && !(t > traj.samples.back().time)) {
        throw ConfigError("trajectory times must increase");
      }
      TrajectorySample s;
      s.time = t;
      s.total_energy = parse(c[11]);
      s.excess_energy = parse(c[12]);
      s.dissipated = parse(c[13]);
      s.W = parse(c[14]);
      s.residuals = {parse(c[15]), parse(c[16]), parse(c[17])};
      s.dW_dt = parse(c[18]);
      traj.samples.push_back(s);
    }
    if (c[1] == "-1") continue;
    TrackPoint p;
    p.position = {parse(c[2]), parse(c[3])};
    p.degree = static_cast<int>(parse(c[4]));
    p.q = parse(c[5]);
    p.j_mass = parse(c[6]);
    p.omega_mass = parse(c[7]);
    p.q_hat = parse(c[8]);
    p.velocity = {parse(c[9]), parse(c[10])};
    traj.samples.back().vortices.push_back(p);
  }
  return traj;
}

void write_events_csv(const std::string& path, const std::vector<BubblingEvent>& events) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << "t0,t1,vortex,x,y,window,dq,d_omega,d_energy\n";
  for (const auto& e : events) {
    out << num(e.t0) << "," << num(e.t1) << "," << e.vortex << "," << num(e.position.x) << ","
        << num(e.position.y) << "," << num(e.window) << "," << e.dq << "," << num(e.d_omega) << ","
        << num(e.d_energy) << "\n";
  }
}

}  // namespace vortexlab

#include "vortexlab/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

static_assert(std::endian::native == std::endian::little, "field files assume a little-endian host");

void write_sidecar(const std::string& path, const Grid2D& g, int components, double time, double epsilon) {
  nlohmann::json j = {{"nx", g.nx()},       {"ny", g.ny()},           {"h", g.h()},
                      {"domain", to_string(g.domain())}, {"bc", to_string(g.bc())}, {"components", components},
                      {"time", time},       {"epsilon", epsilon}};
  std::ofstream out(path + ".json");
  if (!out) throw ConfigError("cannot write " + path + ".json");
  out << j.dump(2) << "\n";
}

void write_raw(const std::string& path, const std::vector<double>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
}

}  // namespace

void write_field(const std::string& path, const DirectorField& m, double time, double epsilon) {
  std::vector<double> data;
  data.reserve(3 * m.size());
  for (const Vec3& v : m.values) data.insert(data.end(), v.begin(), v.end());
  write_raw(path, data);
  write_sidecar(path, *m.grid, 3, time, epsilon);
}

void write_field(const std::string& path, const ComplexField& u, double time, double epsilon) {
  std::vector<double> data;
  data.reserve(2 * u.size());
  for (const cplx& z : u.values) {
    data.push_back(z.real());
    data.push_back(z.imag());
  }
  write_raw(path, data);
  write_sidecar(path, *u.grid, 2, time, epsilon);
}

FieldHeader read_field_header(const std::string& path) {
  std::ifstream in(path + ".json");
  if (!in) throw ConfigError("missing sidecar " + path + ".json");
  nlohmann::json j;
  try {
    in >> j;
    return {j.at("nx").get<int>(),          j.at("ny").get<int>(),          j.at("h").get<double>(),
            j.at("domain").get<std::string>(), j.at("bc").get<std::string>(), j.at("components").get<int>(),
            j.at("time").get<double>(),     j.at("epsilon").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed sidecar " + path + ".json: " + e.what());
  }
}

std::variant<DirectorField, ComplexField> read_field(const std::string& path) {
  const FieldHeader hd = read_field_header(path);
  const DomainKind kind = domain_from_string(hd.domain);
  const DomainSpec spec = kind == DomainKind::UnitDisk
                              ? DomainSpec::unit_disk()
                              : DomainSpec::rectangle(0.0, 0.0, (hd.nx - 1) * hd.h, (hd.ny - 1) * hd.h);
  const GridPtr grid = make_grid(hd.nx, hd.ny, spec, boundary_from_string(hd.bc));
  if (hd.components != 2 && hd.components != 3) throw ConfigError("unsupported component count");
  std::vector<double> data(grid->size() * hd.components);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(data.size() * sizeof(double))) {
    throw ConfigError("truncated field file " + path);
  }
  if (hd.components == 3) {
    DirectorField m(grid);
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = {data[3 * k], data[3 * k + 1], data[3 * k + 2]};
    return m;
  }
  ComplexField u(grid);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = {data[2 * k], data[2 * k + 1]};
  return u;
}

}  // namespace vortexlab

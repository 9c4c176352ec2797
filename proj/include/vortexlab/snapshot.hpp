#pragma once

#include <string>
#include <variant>

#include "vortexlab/fields.hpp"

namespace vortexlab {

/// Header stored next to a `.fld` file as `<path>.json`.
struct FieldHeader {
  int nx{0};
  int ny{0};
  double h{0.0};
  std::string domain;
  std::string bc;
  int components{0};
  double time{0.0};
  double epsilon{0.0};
};

/// Little-endian doubles, row-major, components interleaved (3 for a
/// director, 2 for a complex field), plus the JSON sidecar.
void write_field(const std::string& path, const DirectorField& m, double time, double epsilon);
void write_field(const std::string& path, const ComplexField& u, double time, double epsilon);

FieldHeader read_field_header(const std::string& path);

/// Reads a field written by write_field onto a grid rebuilt from the header
/// (rectangles are reconstructed with origin (0, 0)).
std::variant<DirectorField, ComplexField> read_field(const std::string& path);

}  // namespace vortexlab

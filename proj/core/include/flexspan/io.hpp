#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "flexspan/construction.hpp"
#include "flexspan/flexion.hpp"
#include "flexspan/geometry.hpp"

namespace flexspan {

// Parameter files are "key = value" lines; '#' starts a comment. Lists are
// comma separated, angles are in degrees.
//
//   subtype = III-OAE
//   N = 6
//   L = 3
//   l1 = 10
//   alpha1 = 45
//   beta1 = 60
//   alpha2 = 50
//   beta2 = 65
//   alpha_odd = 40
//
// Length-specified sub-types use l, m and base (L_1..L_M) lists instead.
ParameterSet parse_params(std::istream& in);
ParameterSet parse_params_string(const std::string& text);
ParameterSet parse_params_file(const std::filesystem::path& path);
std::string serialize_params(const ParameterSet& p);

// Shortest decimal degree string that converts back to exactly `rad`.
std::string format_degrees(double rad);
std::string format_number(double x);

struct Mesh {
  std::vector<Vec3> vertices;              // u, w, v_1..v_N
  std::vector<std::array<int, 3>> faces;   // 0-based, outward orientation
};

Mesh mesh_of(const Embedding& emb);
void write_obj(std::ostream& out, const Mesh& mesh, const std::string& comment = {});
Mesh read_obj(std::istream& in);

// One row per state: eps1, adjusted delta/Delta/eps, volume, 2C(S); 9 significant digits.
void write_trace_csv(std::ostream& out, const CapGeometry& geom, const std::vector<FlexState>& trace);

// Closed embedding at an arbitrary ε₁ in the range, DI or mirror label.
Embedding frame_embedding(const CapGeometry& geom, DihedralIdentifier di, double eps1);

struct ExportResult {
  std::vector<std::filesystem::path> meshes;
  std::filesystem::path trace;
  std::vector<double> eps1;
};

// `count` frames evenly spaced over the range, frame_NNN.obj plus trace.csv.
ExportResult export_mesh_frames(const CapGeometry& geom, DihedralIdentifier di, const FlexionRange& range, int count,
                                const std::filesystem::path& dir);

}  // namespace flexspan

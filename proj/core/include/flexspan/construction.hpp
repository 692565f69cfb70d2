#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flexspan/geometry.hpp"

namespace flexspan {

// N-bit root-branch mask; bit k (1-based) is the branch used at vertex v_k,
// 1 for the plus root. Bits 2..N-1 drive the construction; bits 1 and N are
// read back from the closed embedding.
struct DihedralIdentifier {
  std::uint32_t value = 0;
  int N = 0;

  DihedralIdentifier() = default;
  DihedralIdentifier(std::uint32_t v, int n) : value(v), N(n) {}

  bool bit(int k) const { return (value >> (k - 1)) & 1u; }
  void set_bit(int k, bool on);
  std::uint32_t mask() const { return N >= 32 ? 0xffffffffu : ((1u << N) - 1u); }
  // Branch-complemented identifier; labels the reflected folding at 2π - ε₁.
  DihedralIdentifier mirror() const { return {~value & mask(), N}; }
  // Bits that drive the recursion (2..N-1).
  std::uint32_t construction_bits() const;
  std::string hex() const;
  bool operator==(const DihedralIdentifier&) const = default;
};

// Parses "41055", "0xA05F" or "A05Fh".
std::uint32_t parse_di_value(const std::string& text);

struct Embedding {
  Vec3 u = Vec3::Zero();
  Vec3 w = Vec3::Zero();
  std::vector<Vec3> v;  // v_1..v_N stored 0-based
  double eps1 = 0.0;
  DihedralIdentifier di;
  double closure_residual = 0.0;
  double model_residual = 0.0;

  int N() const { return static_cast<int>(v.size()); }
  const Vec3& vk(int k) const { return v[static_cast<size_t>(((k - 1) % N() + N()) % N())]; }
  Vec3& vk(int k) { return v[static_cast<size_t>(((k - 1) % N() + N()) % N())]; }
};

inline constexpr double kClosureTolerance = 1e-8;

// u, v_1, v_2 fixed in the y = 0 plane and w swung about v_1 v_2 by ε₁.
// Remaining base vertexes are left NaN.
Embedding place_initial_faces(const CapGeometry& geom, double eps1);

// Position of v_{k+1} from the rotation about u v_k by δ_k.
Vec3 place_next_vertex(const CapGeometry& geom, const Vec3& u, const Vec3& v_prev, const Vec3& v_k, int k,
                       double delta);

// Dihedrals on the three edge families, stored 0-based (index k-1):
// delta on u v_k, Delta on w v_k, eps on v_k v_{k+1}.
struct Dihedrals {
  std::vector<double> delta;
  std::vector<double> Delta;
  std::vector<double> eps;
};
Dihedrals measure_dihedrals(const Embedding& emb);
double measure_delta(const Embedding& emb, int k);
double measure_Delta(const Embedding& emb, int k);
double measure_eps(const Embedding& emb, int k);

// Recursive construction. Throws NoRealRoot naming the failing vertex. The
// returned embedding carries the full identifier with bits 1 and N read back.
// disc_snap > 0 resolves near-double roots exactly (branch points of the motion).
Embedding construct(const CapGeometry& geom, double eps1, DihedralIdentifier di, double disc_snap = 0.0);
std::optional<Embedding> try_construct(const CapGeometry& geom, double eps1, DihedralIdentifier di,
                                       double disc_snap = 0.0);

// Bits 1 and N classified from the closed embedding.
DihedralIdentifier classify_end_bits(const CapGeometry& geom, const Embedding& emb, DihedralIdentifier di);

// Full identifier for a symmetric I/II folding given bits 1..M of the prefix;
// the remaining bits are the complements at the partner vertexes.
DihedralIdentifier symmetric_di(SubType subtype, int N, std::uint32_t prefix_bits);
int symmetric_bit_partner(SubType subtype, int N, int k);

Embedding symmetric_completion(const CapGeometry& geom, double eps1, std::uint32_t prefix_bits);

// Rigid motion into the sub-type's coordinate model; model_residual is the RMS
// symmetry mismatch. Throws ModelMismatch above 1e-6.
Embedding normalize_to_model(const Embedding& emb, SubType subtype);

// RMS distance of all N+2 vertexes from their best-fit plane.
double coplanarity(const Embedding& emb);

// Planar realization of a third-type geometry at ε₁ = 0 or ε₁ = π with the
// apical dihedral pattern of the corresponding flat folding. closure_residual
// holds the largest edge-length mismatch of the realization.
Embedding flat_folding(const CapGeometry& geom, double eps1);

// Vertex pairs whose dihedrals are tied in third-type suspensions; 0 if none.
int third_type_partner(int N, int k);

double max_edge_error(const CapGeometry& geom, const Embedding& emb);

}  // namespace flexspan

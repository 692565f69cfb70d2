#pragma once

#include <optional>
#include <span>
#include <vector>

#include "flexspan/math.hpp"

namespace flexspan {

// Face angles at an index-4 base vertex v_k, listed around the vertex:
// (v_{k+1}, u) = beta, (u, v_{k-1}) = gamma_prev, (v_{k-1}, w) = Gamma_prev, (w, v_{k+1}) = B.
struct VertexAngles {
  double beta = 0.0;
  double gamma_prev = 0.0;
  double Gamma_prev = 0.0;
  double B = 0.0;

  bool valid() const;
};

// a t² + b t + c = 0 in t = tan(δ/2).
struct QuadraticCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double discriminant() const { return b * b - 4.0 * a * c; }
};

inline constexpr double kDiscriminantClamp = 1e-9;
inline constexpr double kCoeffEpsilon = 1e-12;

// Tetrahedral vertex equation in the four-face-angle form, with slots
// (α1, α2, α3, α4) and dihedrals δ2 between α1/α2 and δ3 between α2/α3.
double c5_residual(double a1, double a2, double a3, double a4, double d2, double d3);

struct C5Partials {
  double d_delta = 0.0;  // ∂/∂δ2
  double d_eps = 0.0;    // ∂/∂δ3
};
C5Partials c5_partials(double a1, double a2, double a3, double a4, double d2, double d3);

// Residual of the vertex equation at v_k for apical dihedral delta and incoming eps_prev.
double vertex_residual(const VertexAngles& angles, double delta, double eps_prev);
C5Partials vertex_partials(const VertexAngles& angles, double delta, double eps_prev);

QuadraticCoeffs vertex_quadratic(const VertexAngles& angles, double eps_prev);

// Root selected by branch (1 = plus root) mapped to [0, 2π). Throws NoRealRoot
// (vertex index 0) or DegenerateQuadratic.
// |discriminant| below snap is treated as an exact double root.
double solve_dihedral(const QuadraticCoeffs& q, int branch, double snap = 0.0);
std::optional<double> try_solve_dihedral(const QuadraticCoeffs& q, int branch, double snap = 0.0);

// Unit directions of the four edges leaving v_k, built from the face angles,
// the incoming dihedral eps_prev and the apical dihedral delta.
struct VertexStar {
  Vec3 to_prev;
  Vec3 to_u;
  Vec3 to_w;
  Vec3 to_next;
};
VertexStar vertex_star(const VertexAngles& angles, double delta, double eps_prev);

// cos ε_k from the linear relation between opposite dihedrals at v_k.
double c6_cos_epsilon(const VertexAngles& angles, double eps_prev);

// ε_k on edge v_k v_{k+1}. Throws OutOfRange if the linear relation gives |cos ε_k| > 1.
double propagate_epsilon(const VertexAngles& angles, double delta_k, double eps_prev);

// Δ_k on edge w v_k from the local star.
double star_Delta(const VertexAngles& angles, double delta_k, double eps_prev);

// Unit-edge cap about an apex at the origin. alpha and delta are 1-indexed
// through index N (entry 0 ignored).
Vec3 cap_vertex_forward(std::span<const double> alpha, std::span<const double> delta, int k);
Vec3 cap_vertex_backward(std::span<const double> alpha, std::span<const double> delta, int k);

struct DependentDihedrals {
  double delta_nm2 = 0.0;
  double delta_nm1 = 0.0;
  double delta_n = 0.0;
  double residual = 0.0;  // max forward/backward vertex mismatch
};

// Solves the cap closure for δ_{N-2}, δ_{N-1}, δ_N given face angles α_1..α_N
// and δ_1..δ_{N-3}. Both inputs are plain 0-indexed lists. Returns every
// consistent solution (at most two).
std::vector<DependentDihedrals> dependent_dihedrals(std::span<const double> face_angles,
                                                    std::span<const double> known_dihedrals);

}  // namespace flexspan

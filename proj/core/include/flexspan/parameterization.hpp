#pragma once

#include <optional>
#include <vector>

#include "flexspan/geometry.hpp"

namespace flexspan {

// Full edge and angle tables for the length-specified sub-types.
CapGeometry expand_type12(const ParameterSet& params);

struct FoldingConstraintReport {
  double alpha_open = 0.0;    // first folding equation, α set
  double alpha_second = 0.0;  // second folding equation, α set
  double A_open = 0.0;
  double A_second = 0.0;

  double max() const;
};

// Residuals of the two flat-folding equations for both apical angle sets.
FoldingConstraintReport check_folding_constraints(const CapGeometry& geom);

// Folding equations evaluated on a raw angle list (0-indexed α_1..α_N), in the
// signed-sum form and in the reduced odd/even form. Returned as {first, second}.
std::pair<double, double> folding_residual_signed(SubType s, int L, int K, const std::vector<double>& angles);
std::pair<double, double> folding_residual_reduced(SubType s, int L, int K, const std::vector<double>& angles);

// Geometry holding only the seeded faces: f_1, f_2, β_3 side data, before any
// quadratic is solved. Unresolved entries are NaN.
CapGeometry seed_faces(const ParameterSet& params);

// Octahedral step: every realizable root of the β_3 quadratic applied to the
// seeded faces, in case order (k_c cases then k_t cases, plus root first).
// Resolves faces f_1, f_2, F_1, F_2 and β_3, B_3.
std::vector<CapGeometry> solve_seed_stage(const ParameterSet& params);

// Recursion step J (odd, 5 <= J <= N-1): resolves faces J-2 and J-1 and
// β_J, B_J from the pair (v_{J-3}, v_J), using α_{J-2} from the prefix.
std::vector<CapGeometry> advance_stage(const CapGeometry& prefix, int J);

// Closes faces N-1 and N from the folding equations; returns nullopt if any
// angle is unrealizable or the opposite-angle assignments at v_N, v_1 miss by
// more than tol.
std::optional<CapGeometry> close_suspension(const CapGeometry& prefix, double tol = 1e-8);

// Closes an N=4 seed stage purely from the opposite-angle assignments and the
// law of sines; nullopt if the length chain is inconsistent beyond tol.
std::optional<CapGeometry> close_octahedron_by_assignment(const CapGeometry& prefix, double tol = 1e-8);

// True iff some branch choice at ε₁ = π/2 through v_stage satisfies every
// resolved pair relation cos ε_k = cos ε_j to 1e-6.
bool partial_construction_filter(const CapGeometry& prefix, int stage);

struct CompletionOptions {
  bool use_filter = true;
  double merge_tolerance_deg = 1e-7;
};

std::vector<CapGeometry> complete_octahedron(const ParameterSet& params);
std::vector<CapGeometry> complete_suspension(const ParameterSet& params, const CompletionOptions& opts = {});

// Max discrepancy between the apical angles A_k and the closed-form
// expressions derived from the opposite-angle assignments (III-OAE only).
double apical_angle_crosscheck(const CapGeometry& geom);

// Max residual of the opposite-angle assignment at every base vertex.
double opposite_angle_residual(const CapGeometry& geom);

}  // namespace flexspan

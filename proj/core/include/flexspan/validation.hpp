#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flexspan/flexion.hpp"

namespace flexspan {

// Signed volume over all 2N faces, oriented as f_k = (u, v_{k+1}, v_k) and
// F_k = (w, v_k, v_{k+1}), taken about the vertex centroid.
double oriented_volume(const Embedding& emb);

// Σ_k l_k(π - δ_k) + m_k(π - Δ_k) + L_k(π - ε_k) on the adjusted dihedrals.
double total_mean_curvature(const FlexState& state, const CapGeometry& geom);

// Spherical excess Σ dihedrals - (n - 2)π of an index-n vertex.
double solid_angle(std::span<const double> dihedrals);

struct SolidAngles {
  std::vector<double> v;  // σ_1..σ_N, 0-based
  double u = 0.0;
  double w = 0.0;
  double total() const;
};
// Solid angles on the adjusted dihedrals of a state. Throws DegenerateStar if
// two edges at a vertex are parallel.
SolidAngles solid_angles(const FlexState& state);

// Vertex pairs whose solid angles sum to 4π, 1-based; u and w are always paired too.
std::vector<std::pair<int, int>> solid_angle_pairs(SubType subtype, int N);

struct RelationCheck {
  std::string label;    // e.g. "delta1~Delta3"
  double residual = 0;  // distance to the nearest admissible alternative
  int alternative = 0;  // 0 equal, 1 supplementary (π - x), 2 conjugate (2π - x); -1 ambiguous
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  double max_residual() const;
};

// Equal/conjugate dihedral relations of the sub-type on raw dihedrals.
RelationReport dihedral_relations(const FlexState& state, SubType subtype);

struct ValidationSample {
  double eps1 = 0.0;
  bool endpoint = false;
  double volume = 0.0;
  double mean_curvature = 0.0;  // 2C(S)
  double closing_rate = 0.0;
  double closure_residual = 0.0;
  double edge_error = 0.0;
  SolidAngles sigma;
  double pair_residual = 0.0;  // max |σ_i + σ_j - 4π|
  double relation_residual = 0.0;
  double dihedral_sum = 0.0;
  double solid_angle_sum = 0.0;
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass() const { return value <= limit; }
};

struct ValidationReport {
  std::vector<ValidationSample> samples;
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct ValidateOptions {
  double step_deg = 1.0;
};

// Samples each interval of the range and runs the full battery.
ValidationReport validate_full(const CapGeometry& geom, DihedralIdentifier di, const FlexionRange& range,
                               const ValidateOptions& opts = {});

// Battery over an already sampled, adjusted trace.
ValidationReport validate_trace(const CapGeometry& geom, const std::vector<FlexState>& trace);

// Report on several traces merged: per-trace constancy, global maxima.
ValidationReport merge_reports(const std::vector<ValidationReport>& parts);

}  // namespace flexspan

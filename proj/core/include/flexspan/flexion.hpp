#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flexspan/construction.hpp"

namespace flexspan {

struct FlexState {
  double eps1 = 0.0;  // may exceed 2π on a wrapped range
  Embedding emb;
  Dihedrals raw;       // measured, [0, 2π)
  Dihedrals adjusted;  // raw + 2πk after continuity_adjust
  Dihedrals rates;     // d/dε₁, NaN at an endpoint state
  Vec3 u_rate = Vec3::Zero();
  Vec3 w_rate = Vec3::Zero();
  std::vector<Vec3> v_rate;
  double closing_rate = 0.0;  // d|v_N - v_1|²/dε₁
  bool endpoint = false;      // implicit-function denominator vanished
};

// Dihedrals and velocities by the implicit derivative recursion. Throws
// SingularDerivative at a vanishing denominator.
FlexState derivative_state(const CapGeometry& geom, const Embedding& emb);

// Same as derivative_state but flags the state as an endpoint instead of throwing.
FlexState measure_state(const CapGeometry& geom, const Embedding& emb);

// d|v_N - v_1|²/dε₁ at eps1 for the folding di.
double flexibility_test(const CapGeometry& geom, double eps1, DihedralIdentifier di);

inline constexpr double kFlexibilityTolerance = 1e-6;  // times L_N²

bool closes(const CapGeometry& geom, const Embedding& emb);
bool is_flexible_state(const CapGeometry& geom, const FlexState& s);

enum class RangeForm { TwoIntervals, Wrapped, SingleInterval, FullCircle };
std::string to_string(RangeForm f);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct FlexionRange {
  std::vector<Interval> intervals;
  RangeForm form = RangeForm::SingleInterval;
  double total_width() const;
  bool contains(double eps1) const;
};

struct SweepOptions {
  double step_deg = 1.0;
  double resolution_deg = 1e-4;
  // Gaps narrower than this are bridged. They occur at flat states, where the
  // double root of the vertex quadratic limits the attainable closure residual.
  double bridge_deg = 1e-2;
  // Intervals narrower than this are dropped: every folding closes at a flat
  // state, so such intervals carry no flexion.
  double min_width_deg = 0.1;
};

// True if the folding di (or its mirror label) closes flexibly at eps1. A
// sample that fails in isolation while both neighbours 1e-7 rad away pass is
// counted as passing.
bool admissible(const CapGeometry& geom, double eps1, DihedralIdentifier di);

// Throws NotFlexible if no sample passes.
FlexionRange find_flexion_range(const CapGeometry& geom, DihedralIdentifier di, const SweepOptions& opts = {});

struct AliasWarning {
  std::size_t sample = 0;
  char family = 'd';  // 'd' apical u, 'D' apical w, 'e' base
  int vertex = 0;
  double jump = 0.0;
};

// Unwraps every dihedral along the trace. Branches are fixed at the first
// sample where no dihedral sits at 0 mod 2π, where adjusted = raw. Inter-sample
// jumps above π/2 are reported through warnings when given.
void continuity_adjust(std::vector<FlexState>& trace, std::vector<AliasWarning>* warnings = nullptr);

// States on the step grid inside one interval, plus both endpoints when
// include_endpoints is set. Each sample uses the label (di or its mirror) that
// closes, nearest the previous sample when both do. Dihedrals are adjusted.
std::vector<FlexState> sample_trace(const CapGeometry& geom, DihedralIdentifier di, const Interval& interval,
                                    double step_deg = 1.0, bool include_endpoints = false);

struct Folding {
  DihedralIdentifier di;
  FlexionRange range;
};

struct EnumerateOptions {
  bool exhaustive = false;
  int max_exhaustive_n = 16;
  SweepOptions sweep;
};

// Candidate identifiers of a third-type geometry that close at eps1, found by
// a depth-first branch search pruned by the paired-edge relation
// cos ε_k = cos ε_j.
std::vector<DihedralIdentifier> third_type_candidates(const CapGeometry& geom, double eps1 = 0.5 * kPi);

// Every flexible folding, in identifier order.
std::vector<Folding> enumerate_foldings(const CapGeometry& geom, const EnumerateOptions& opts = {});

}  // namespace flexspan

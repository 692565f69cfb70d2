#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "flexspan/construction.hpp"
#include "flexspan/fixtures.hpp"
#include "flexspan/flexion.hpp"
#include "flexspan/parameterization.hpp"

namespace flexspan::testing {

inline bool matches_reference(const CapGeometry& g, const Fixture& f, double tol_deg = 1e-4) {
  for (size_t i = 0; i < f.beta_deg.size(); ++i)
    if (std::abs(to_deg(g.beta(3 + static_cast<int>(i))) - f.beta_deg[i]) > tol_deg) return false;
  for (size_t i = 0; i < f.even_alpha_deg.size(); ++i)
    if (std::abs(to_deg(g.alpha(4 + 2 * static_cast<int>(i))) - f.even_alpha_deg[i]) > tol_deg) return false;
  return true;
}

// The completion a third-type fixture refers to, or the expanded geometry.
inline std::optional<CapGeometry> reference_geometry(const Fixture& f) {
  if (is_type12(f.params.subtype)) return expand_type12(f.params);
  for (const auto& g : complete_suspension(f.params))
    if (matches_reference(g, f)) return g;
  return std::nullopt;
}

// Closed embedding at eps1 under the identifier or its mirror.
inline std::optional<Embedding> closed_embedding(const CapGeometry& g, DihedralIdentifier di, double eps1) {
  for (const auto& label : {di, di.mirror()}) {
    auto e = try_construct(g, wrap_two_pi(eps1), label);
    if (e && closes(g, *e)) return e;
  }
  return std::nullopt;
}

// Largest mismatch between the analytic rates at eps1 and central differences
// with step h, each scaled by max(1, |analytic|). Covers dihedral rates, vertex
// velocities and the closing-edge rate.
inline double derivative_fd_error(const CapGeometry& g, const Embedding& at, double h = 1e-5) {
  const FlexState s = derivative_state(g, at);
  const Embedding p = construct(g, wrap_two_pi(at.eps1 + h), at.di);
  const Embedding m = construct(g, wrap_two_pi(at.eps1 - h), at.di);
  double worst = 0.0;
  auto cmp = [&](double analytic, double fd) {
    worst = std::max(worst, std::abs(analytic - fd) / std::max(1.0, std::abs(analytic)));
  };
  const Dihedrals dp = measure_dihedrals(p), dm = measure_dihedrals(m);
  for (size_t k = 0; k < dp.delta.size(); ++k) {
    cmp(s.rates.delta[k], wrap_pi(dp.delta[k] - dm.delta[k]) / (2 * h));
    cmp(s.rates.Delta[k], wrap_pi(dp.Delta[k] - dm.Delta[k]) / (2 * h));
    cmp(s.rates.eps[k], wrap_pi(dp.eps[k] - dm.eps[k]) / (2 * h));
  }
  for (int k = 1; k <= g.N(); ++k) {
    const Vec3 fd = (p.vk(k) - m.vk(k)) / (2 * h);
    for (int c = 0; c < 3; ++c) cmp(s.v_rate[static_cast<size_t>(k - 1)][c], fd[c]);
  }
  const Vec3 wfd = (p.w - m.w) / (2 * h);
  for (int c = 0; c < 3; ++c) cmp(s.w_rate[c], wfd[c]);
  const int N = g.N();
  cmp(s.closing_rate, ((p.vk(N) - p.vk(1)).squaredNorm() - (m.vk(N) - m.vk(1)).squaredNorm()) / (2 * h));
  return worst;
}

}  // namespace flexspan::testing

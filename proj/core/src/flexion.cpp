#include "flexspan/flexion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>

#include "flexspan/errors.hpp"
#include "flexspan/parallel.hpp"

namespace flexspan {
namespace {

constexpr double kNudge = 1e-7;
constexpr double kBranchSnap = 1e-10;
constexpr double kFlatMatch = 1e-3;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vec3 unit(const Vec3& v) { return v / v.norm(); }

Dihedrals nan_dihedrals(int N) {
  Dihedrals d;
  d.delta.assign(static_cast<size_t>(N), kNaN);
  d.Delta.assign(static_cast<size_t>(N), kNaN);
  d.eps.assign(static_cast<size_t>(N), kNaN);
  return d;
}

double label_distance(const Dihedrals& a, const Dihedrals& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.delta.size(); ++i)
    s += std::abs(wrap_pi(a.delta[i] - b.delta[i])) + std::abs(wrap_pi(a.Delta[i] - b.Delta[i])) +
         std::abs(wrap_pi(a.eps[i] - b.eps[i]));
  return s;
}

bool admissible_exact(const CapGeometry& g, double eps1, DihedralIdentifier di) {
  for (const DihedralIdentifier& label : {di, di.mirror()}) {
    auto e = try_construct(g, wrap_two_pi(eps1), label);
    if (!e || !closes(g, *e)) continue;
    try {
      const FlexState s = derivative_state(g, *e);
      if (is_flexible_state(g, s)) return true;
    } catch (const SingularDerivative&) {
      return true;
    }
  }
  return false;
}

double position_distance(const Embedding& a, const Embedding& b) {
  double d = (a.u - b.u).norm() + (a.w - b.w).norm();
  for (size_t i = 0; i < a.v.size(); ++i) d += (a.v[i] - b.v[i]).norm();
  return d;
}

std::vector<Embedding> closing_embeddings(const CapGeometry& g, DihedralIdentifier di, double x) {
  std::vector<Embedding> out;
  for (const DihedralIdentifier& label : {di, di.mirror()}) {
    auto e = try_construct(g, wrap_two_pi(x), label);
    if (e && closes(g, *e)) {
      e->eps1 = x;
      out.push_back(std::move(*e));
    }
  }
  return out;
}

const Embedding* nearest(const std::vector<Embedding>& cs, const Embedding& ref) {
  const Embedding* best = nullptr;
  double bd = std::numeric_limits<double>::infinity();
  for (const auto& c : cs) {
    const double d = position_distance(c, ref);
    if (d < bd) {
      bd = d;
      best = &c;
    }
  }
  return best;
}

// Grid points where the half-angle quadratic degenerates (coincident faces,
// flat states) are rebuilt from x±h and x±2h by fourth-order extrapolation.
std::optional<Embedding> extrapolated_embedding(const CapGeometry& g, DihedralIdentifier di, double x,
                                                const Interval& iv) {
  constexpr double h = 1e-3;
  if (x - 2 * h < iv.lo || x + 2 * h > iv.hi) return std::nullopt;
  const auto m1 = closing_embeddings(g, di, x - h), p1 = closing_embeddings(g, di, x + h);
  const auto m2 = closing_embeddings(g, di, x - 2 * h), p2 = closing_embeddings(g, di, x + 2 * h);
  if (m1.empty() || p1.empty() || m2.empty() || p2.empty()) return std::nullopt;
  const Embedding *a = nullptr, *b = nullptr;
  double bd = std::numeric_limits<double>::infinity();
  for (const auto& c : m1)
    for (const auto& d : p1)
      if (const double dist = position_distance(c, d); dist < bd) {
        bd = dist;
        a = &c;
        b = &d;
      }
  const Embedding* a2 = nearest(m2, *a);
  const Embedding* b2 = nearest(p2, *b);
  auto mix = [](const Vec3& p1v, const Vec3& m1v, const Vec3& p2v, const Vec3& m2v) -> Vec3 {
    return (2.0 * (p1v + m1v) - 0.5 * (p2v + m2v)) / 3.0;
  };
  Embedding e = *a;
  e.eps1 = x;
  e.u = mix(b->u, a->u, b2->u, a2->u);
  e.w = mix(b->w, a->w, b2->w, a2->w);
  for (size_t i = 0; i < e.v.size(); ++i) e.v[i] = mix(b->v[i], a->v[i], b2->v[i], a2->v[i]);
  const int N = g.N();
  e.closure_residual = std::abs((e.vk(N) - e.vk(1)).norm() - g.L(N));
  if (max_edge_error(g, e) > kClosureTolerance * std::max(1.0, g.L(N))) return std::nullopt;
  return e;
}

}  // namespace

FlexState derivative_state(const CapGeometry& g, const Embedding& emb) {
  const int N = g.N();
  FlexState s;
  s.eps1 = emb.eps1;
  s.emb = emb;
  s.raw = measure_dihedrals(emb);
  s.adjusted = s.raw;
  s.v_rate.assign(static_cast<size_t>(N), Vec3::Zero());
  const double r = g.m(1) * std::sin(g.B(1));
  const double e1 = wrap_two_pi(emb.eps1);
  s.w_rate = Vec3(-r * std::sin(e1), r * std::cos(e1), 0.0);
  auto vel = [&](int k) -> Vec3& { return s.v_rate[static_cast<size_t>(((k - 1) % N + N) % N)]; };

  Vec3 omega = Vec3::Zero();
  double eps_rate = 1.0;
  for (int k = 2; k <= N - 1; ++k) {
    const C5Partials p = vertex_partials(g.vertex_angles(k), s.raw.delta[static_cast<size_t>(k - 1)],
                                         s.raw.eps[static_cast<size_t>(k - 2)]);
    if (std::abs(p.d_delta) < 1e-12) throw SingularDerivative(k);
    const double delta_rate = -p.d_eps / p.d_delta * eps_rate;
    omega += delta_rate * unit(emb.vk(k) - emb.u);
    vel(k + 1) = omega.cross(emb.vk(k + 1) - emb.u);
    eps_rate = dihedral_rate(emb.vk(k), emb.vk(k + 1), emb.w, emb.u, vel(k), vel(k + 1), s.w_rate, s.u_rate);
  }

  s.rates = nan_dihedrals(N);
  for (int k = 1; k <= N; ++k) {
    const auto i = static_cast<size_t>(k - 1);
    s.rates.delta[i] = dihedral_rate(emb.u, emb.vk(k), emb.vk(k - 1), emb.vk(k + 1), s.u_rate, vel(k), vel(k - 1),
                                     vel(k + 1));
    s.rates.Delta[i] = dihedral_rate(emb.w, emb.vk(k), emb.vk(k + 1), emb.vk(k - 1), s.w_rate, vel(k), vel(k + 1),
                                     vel(k - 1));
    s.rates.eps[i] = dihedral_rate(emb.vk(k), emb.vk(k + 1), emb.w, emb.u, vel(k), vel(k + 1), s.w_rate, s.u_rate);
  }
  s.rates.eps[0] = 1.0;
  s.closing_rate = 2.0 * (emb.vk(N) - emb.vk(1)).dot(vel(N) - vel(1));
  return s;
}

FlexState measure_state(const CapGeometry& g, const Embedding& emb) {
  try {
    return derivative_state(g, emb);
  } catch (const SingularDerivative&) {
    FlexState s;
    s.eps1 = emb.eps1;
    s.emb = emb;
    s.raw = measure_dihedrals(emb);
    s.adjusted = s.raw;
    s.rates = nan_dihedrals(g.N());
    s.v_rate.assign(static_cast<size_t>(g.N()), Vec3::Constant(kNaN));
    s.closing_rate = kNaN;
    s.endpoint = true;
    return s;
  }
}

double flexibility_test(const CapGeometry& g, double eps1, DihedralIdentifier di) {
  return derivative_state(g, construct(g, eps1, di)).closing_rate;
}

bool closes(const CapGeometry& g, const Embedding& emb) {
  return emb.closure_residual <= kClosureTolerance * g.L(g.N());
}

bool is_flexible_state(const CapGeometry& g, const FlexState& s) {
  const double LN = g.L(g.N());
  return std::abs(s.closing_rate) < kFlexibilityTolerance * LN * LN;
}

std::string to_string(RangeForm f) {
  switch (f) {
    case RangeForm::TwoIntervals:
      return "two-intervals";
    case RangeForm::Wrapped:
      return "wrapped";
    case RangeForm::SingleInterval:
      return "single-interval";
    case RangeForm::FullCircle:
      return "full-circle";
  }
  return "?";
}

double FlexionRange::total_width() const {
  double w = 0.0;
  for (const auto& i : intervals) w += i.hi - i.lo;
  return w;
}

bool FlexionRange::contains(double eps1) const {
  for (const auto& i : intervals) {
    for (double shift : {-kTwoPi, 0.0, kTwoPi})
      if (eps1 + shift >= i.lo && eps1 + shift <= i.hi) return true;
  }
  return false;
}

bool admissible(const CapGeometry& g, double eps1, DihedralIdentifier di) {
  if (admissible_exact(g, eps1, di)) return true;
  return admissible_exact(g, eps1 - kNudge, di) && admissible_exact(g, eps1 + kNudge, di);
}

FlexionRange find_flexion_range(const CapGeometry& g, DihedralIdentifier di, const SweepOptions& opts) {
  const int n = std::max(1, static_cast<int>(std::lround(360.0 / opts.step_deg)));
  const double step = kTwoPi / n;
  std::vector<char> pass(static_cast<size_t>(n), 0);
  parallel_for(static_cast<size_t>(n), [&](size_t i) { pass[i] = admissible(g, step * static_cast<double>(i), di); });

  FlexionRange range;
  const auto passed = std::count(pass.begin(), pass.end(), 1);
  if (passed == 0) throw NotFlexible("no sampled flexion value admits a flexible closure for DI " + di.hex());
  if (passed == n) {
    range.form = RangeForm::FullCircle;
    range.intervals.push_back({0.0, kTwoPi});
    return range;
  }

  const double res = to_rad(opts.resolution_deg);
  auto refine = [&](double good, double bad) {
    while (std::abs(good - bad) > res) {
      const double mid = 0.5 * (good + bad);
      (admissible(g, mid, di) ? good : bad) = mid;
    }
    return good;
  };

  int f0 = 0;
  while (pass[static_cast<size_t>(f0)]) ++f0;
  struct Run {
    int a, b;  // unwrapped sample indices, a <= b
  };
  std::vector<Run> runs;
  for (int j = 1; j <= n; ++j) {
    const int i = f0 + j;
    if (!pass[static_cast<size_t>(i % n)]) continue;
    if (!runs.empty() && runs.back().b == i - 1)
      runs.back().b = i;
    else
      runs.push_back({i, i});
  }
  std::vector<Interval> ivs(runs.size());
  parallel_for(runs.size(), [&](size_t r) {
    const double a = step * runs[r].a, b = step * runs[r].b;
    double lo = refine(a, a - step), hi = refine(b, b + step);
    const double shift = std::floor(lo / kTwoPi) * kTwoPi;
    ivs[r] = {lo - shift, hi - shift};
  });
  std::sort(ivs.begin(), ivs.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  const double bridge = to_rad(opts.bridge_deg);
  std::vector<Interval> merged;
  for (const auto& iv : ivs) {
    if (!merged.empty() && iv.lo - merged.back().hi < bridge)
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  if (merged.front().lo + kTwoPi - merged.back().hi < bridge) {
    if (merged.size() == 1) {
      range.form = RangeForm::FullCircle;
      range.intervals.push_back({0.0, kTwoPi});
      return range;
    }
    merged.back().hi = merged.front().hi + kTwoPi;
    merged.erase(merged.begin());
  }
  const double min_width = to_rad(opts.min_width_deg);
  std::erase_if(merged, [&](const Interval& iv) { return iv.hi - iv.lo < min_width; });
  if (merged.empty()) throw NotFlexible("flexion range of DI " + di.hex() + " degenerates to isolated points");
  range.intervals = merged;
  if (merged.size() == 1)
    range.form = merged[0].hi > kTwoPi ? RangeForm::Wrapped : RangeForm::SingleInterval;
  else
    range.form = RangeForm::TwoIntervals;
  return range;
}

namespace {

bool generic_sample(const Dihedrals& d) {
  auto clear = [](const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::abs(wrap_pi(x)) > 1e-6; });
  };
  return clear(d.delta) && clear(d.Delta) && clear(d.eps);
}

}  // namespace

void continuity_adjust(std::vector<FlexState>& trace, std::vector<AliasWarning>* warnings) {
  if (trace.empty()) return;
  // Anchor on the first sample with no dihedral at 0 mod 2π; its raw values
  // fix the branch of every series.
  size_t anchor = 0;
  while (anchor < trace.size() && !generic_sample(trace[anchor].raw)) ++anchor;
  if (anchor == trace.size()) anchor = 0;
  for (auto& s : trace) s.adjusted = s.raw;
  auto fix = [&](size_t from, size_t to, std::vector<double> Dihedrals::*family, char tag) {
    const std::vector<double>& prev = trace[from].adjusted.*family;
    std::vector<double>& cur = trace[to].adjusted.*family;
    for (size_t k = 0; k < cur.size(); ++k) {
      cur[k] += kTwoPi * std::round((prev[k] - cur[k]) / kTwoPi);
      const double jump = std::abs(cur[k] - prev[k]);
      if (warnings && jump > 0.5 * kPi) warnings->push_back({to, tag, static_cast<int>(k + 1), jump});
    }
  };
  auto step = [&](size_t from, size_t to) {
    fix(from, to, &Dihedrals::delta, 'd');
    fix(from, to, &Dihedrals::Delta, 'D');
    fix(from, to, &Dihedrals::eps, 'e');
  };
  for (size_t i = anchor + 1; i < trace.size(); ++i) step(i - 1, i);
  for (size_t i = anchor; i-- > 0;) step(i + 1, i);
}

std::vector<FlexState> sample_trace(const CapGeometry& g, DihedralIdentifier di, const Interval& iv, double step_deg,
                                    bool include_endpoints) {
  const double step = to_rad(step_deg);
  std::vector<double> grid;
  if (include_endpoints) grid.push_back(iv.lo);
  for (double x = std::ceil(iv.lo / step - 1e-9) * step; x <= iv.hi + 1e-12; x += step)
    if (grid.empty() || std::abs(x - grid.back()) > 1e-9) grid.push_back(x);
  if (include_endpoints && std::abs(grid.back() - iv.hi) > 1e-9) grid.push_back(iv.hi);

  struct Cand {
    double eps;
    Embedding emb;
    Dihedrals raw;
  };
  std::vector<std::vector<Cand>> cands(grid.size());
  parallel_for(grid.size(), [&](size_t i) {
    for (const DihedralIdentifier& label : {di, di.mirror()}) {
      auto e = try_construct(g, wrap_two_pi(grid[i]), label);
      if (auto snapped = try_construct(g, wrap_two_pi(grid[i]), label, kBranchSnap);
          snapped && (!e || snapped->closure_residual < e->closure_residual))
        e = std::move(snapped);
      if (!e || !closes(g, *e)) continue;
      e->eps1 = grid[i];
      Dihedrals raw = measure_dihedrals(*e);
      cands[i].push_back({grid[i], std::move(*e), std::move(raw)});
    }
    if (!cands[i].empty()) return;
    if (auto e = extrapolated_embedding(g, di, grid[i], iv)) {
      Dihedrals raw = measure_dihedrals(*e);
      cands[i].push_back({grid[i], std::move(*e), std::move(raw)});
      return;
    }
    for (double d : {kNudge, -kNudge}) {
      const double x = grid[i] + d;
      if (d != 0.0 && (x < iv.lo || x > iv.hi)) continue;
      for (const DihedralIdentifier& label : {di, di.mirror()}) {
        auto e = try_construct(g, wrap_two_pi(x), label);
        if (!e || !closes(g, *e)) continue;
        e->eps1 = x;
        Dihedrals raw = measure_dihedrals(*e);
        cands[i].push_back({x, std::move(*e), std::move(raw)});
      }
      if (!cands[i].empty()) break;
    }
  });

  if (!is_type12(g.subtype())) {
    for (size_t i = 0; i < grid.size(); ++i) {
      const double e1 = wrap_two_pi(grid[i]);
      const double flat = std::abs(e1) < 1e-12 || std::abs(e1 - kTwoPi) < 1e-12 ? 0.0
                          : std::abs(e1 - kPi) < 1e-12                         ? kPi
                                                                               : -1.0;
      if (flat < 0.0 || cands[i].empty()) continue;
      Embedding e = flat_folding(g, flat);
      if (!closes(g, e)) continue;
      e.eps1 = grid[i];
      e.di = cands[i].front().emb.di;
      Dihedrals raw = measure_dihedrals(e);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : cands[i]) best = std::min(best, label_distance(c.raw, raw));
      if (best < kFlatMatch) cands[i] = {Cand{grid[i], std::move(e), std::move(raw)}};
    }
  }

  std::vector<const Cand*> picked;
  for (auto& cs : cands) {
    if (cs.empty()) continue;
    const Cand* best = &cs.front();
    if (!picked.empty()) {
      double bd = std::numeric_limits<double>::infinity();
      for (const auto& c : cs) {
        const double d = label_distance(c.raw, picked.back()->raw);
        if (d < bd) {
          bd = d;
          best = &c;
        }
      }
    }
    picked.push_back(best);
  }
  std::vector<FlexState> trace(picked.size());
  parallel_for(picked.size(), [&](size_t i) {
    Embedding e = picked[i]->emb;
    trace[i] = measure_state(g, e);
    trace[i].eps1 = picked[i]->eps;
  });
  continuity_adjust(trace);
  return trace;
}

std::vector<DihedralIdentifier> third_type_candidates(const CapGeometry& g, double eps1) {
  const int N = g.N();
  const Embedding e0 = place_initial_faces(g, eps1);
  std::vector<double> cos_eps(static_cast<size_t>(N + 1), 0.0);
  cos_eps[1] = std::cos(eps1);
  std::vector<Vec3> v(static_cast<size_t>(N + 1), Vec3::Zero());
  v[1] = e0.v[0];
  v[2] = e0.v[1];
  std::vector<std::uint32_t> found;
  std::function<void(int, double, std::uint32_t)> rec = [&](int k, double eps_prev, std::uint32_t bits) {
    if (k == N) {
      if (std::abs((v[static_cast<size_t>(N)] - v[1]).norm() - g.L(N)) < 1e-7 * std::max(1.0, g.L(N)))
        found.push_back(bits);
      return;
    }
    QuadraticCoeffs q;
    try {
      q = vertex_quadratic(g.vertex_angles(k), eps_prev);
    } catch (const Error&) {
      return;
    }
    for (int branch : {0, 1}) {
      auto d = try_solve_dihedral(q, branch);
      if (!d) continue;
      v[static_cast<size_t>(k + 1)] =
          place_next_vertex(g, e0.u, v[static_cast<size_t>(k - 1)], v[static_cast<size_t>(k)], k, *d);
      const double ek = dihedral(v[static_cast<size_t>(k)], v[static_cast<size_t>(k + 1)], e0.w, e0.u);
      cos_eps[static_cast<size_t>(k)] = std::cos(ek);
      const int p = third_type_partner(N, k);
      if (p != 0 && p < k && std::abs(cos_eps[static_cast<size_t>(k)] - cos_eps[static_cast<size_t>(p)]) > 1e-6)
        continue;
      rec(k + 1, ek, bits | (static_cast<std::uint32_t>(branch) << (k - 1)));
    }
  };
  rec(2, eps1, 0u);
  std::vector<DihedralIdentifier> out;
  for (auto bits : found)
    if (auto e = try_construct(g, eps1, DihedralIdentifier(bits, N))) out.push_back(e->di);
  return out;
}

namespace {

std::vector<DihedralIdentifier> exhaustive_candidates(const CapGeometry& g, double eps1) {
  const int N = g.N();
  const std::uint32_t count = 1u << (N - 2);
  std::vector<std::optional<DihedralIdentifier>> hits(count);
  parallel_for(count, [&](size_t m) {
    DihedralIdentifier di(static_cast<std::uint32_t>(m) << 1, N);
    auto e = try_construct(g, eps1, di);
    if (e && closes(g, *e)) hits[m] = e->di;
  });
  std::vector<DihedralIdentifier> out;
  for (auto& h : hits)
    if (h) out.push_back(*h);
  return out;
}

}  // namespace

std::vector<Folding> enumerate_foldings(const CapGeometry& g, const EnumerateOptions& opts) {
  const int N = g.N();
  if (opts.exhaustive && N > opts.max_exhaustive_n)
    throw OutOfRange("exhaustive folding search is limited to N <= " + std::to_string(opts.max_exhaustive_n));
  std::vector<DihedralIdentifier> cands;
  if (is_type12(g.subtype())) {
    if (opts.exhaustive) {
      const std::uint32_t count = 1u << (N - 2);
      for (std::uint32_t m = 0; m < count; ++m) {
        DihedralIdentifier di(m << 1, N);
        di.set_bit(1, true);
        cands.push_back(di);
      }
    } else {
      const int M = N / 2;
      for (std::uint32_t free = 0; free < (1u << (M - 1)); ++free)
        cands.push_back(symmetric_di(g.subtype(), N, 1u | (free << 1)));
    }
  } else {
    cands = opts.exhaustive ? exhaustive_candidates(g, 0.5 * kPi) : third_type_candidates(g, 0.5 * kPi);
  }

  std::vector<std::optional<FlexionRange>> ranges(cands.size());
  parallel_for(cands.size(), [&](size_t i) {
    try {
      ranges[i] = find_flexion_range(g, cands[i], opts.sweep);
    } catch (const NotFlexible&) {
    }
  });

  std::map<std::uint32_t, Folding> by_key;
  for (size_t i = 0; i < cands.size(); ++i) {
    if (!ranges[i]) continue;
    const DihedralIdentifier& di = cands[i];
    const std::uint32_t key = std::min(di.construction_bits(), di.mirror().construction_bits());
    if (!by_key.count(key)) by_key.emplace(key, Folding{di, *ranges[i]});
  }
  std::vector<Folding> out;
  for (auto& [k, f] : by_key) out.push_back(std::move(f));
  std::sort(out.begin(), out.end(), [](const Folding& a, const Folding& b) { return a.di.value < b.di.value; });
  return out;
}

}  // namespace flexspan

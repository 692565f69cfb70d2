#include "flexspan/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flexspan/errors.hpp"
#include "flexspan/parallel.hpp"

namespace flexspan {
namespace {

double at(const std::vector<double>& xs, int k) {
  const int n = static_cast<int>(xs.size());
  return xs[static_cast<size_t>(((k - 1) % n + n) % n)];
}

struct Alt {
  double value;
  int tag;
};

RelationCheck nearest(const std::string& label, double x, const std::vector<Alt>& alts) {
  double best = std::numeric_limits<double>::infinity(), second = best;
  int tag = -1;
  for (const auto& a : alts) {
    const double r = std::abs(wrap_pi(x - a.value));
    if (r < best) {
      second = best;
      best = r;
      tag = a.tag;
    } else if (r < second) {
      second = r;
    }
  }
  return {label, best, second - best < 1e-6 ? -1 : tag};
}

std::string name(const char* a, int k, const char* b, int j) {
  return std::string(a) + std::to_string(k) + "~" + b + std::to_string(j);
}

// Consecutive edges of the star, in cyclic order, must not coincide.
void check_parallel(const Vec3& center, const std::vector<Vec3>& nbrs, const std::string& label) {
  std::vector<Vec3> dirs;
  for (const auto& p : nbrs) dirs.push_back((p - center).normalized());
  for (size_t i = 0; i < dirs.size(); ++i) {
    const Vec3& a = dirs[i];
    const Vec3& b = dirs[(i + 1) % dirs.size()];
    if (a.cross(b).norm() < 1e-12 && a.dot(b) > 0.0) throw DegenerateStar(label);
  }
}

double relative_variation(const std::vector<double>& xs, double floor) {
  if (xs.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  return (*hi - *lo) / std::max(std::abs(mean), floor);
}

}  // namespace

double oriented_volume(const Embedding& e) {
  const int N = e.N();
  Vec3 c = e.u + e.w;
  for (const auto& v : e.v) c += v;
  c /= static_cast<double>(N + 2);
  auto tet = [&](const Vec3& a, const Vec3& b, const Vec3& d) { return (a - c).dot((b - c).cross(d - c)) / 6.0; };
  double vol = 0.0;
  for (int k = 1; k <= N; ++k) {
    vol += tet(e.u, e.vk(k + 1), e.vk(k));
    vol += tet(e.w, e.vk(k), e.vk(k + 1));
  }
  return vol;
}

double total_mean_curvature(const FlexState& s, const CapGeometry& g) {
  double sum = 0.0;
  for (int k = 1; k <= g.N(); ++k) {
    const auto i = static_cast<size_t>(k - 1);
    sum += g.l(k) * (kPi - s.adjusted.delta[i]) + g.m(k) * (kPi - s.adjusted.Delta[i]) +
           g.L(k) * (kPi - s.adjusted.eps[i]);
  }
  return sum;
}

double solid_angle(std::span<const double> dihedrals) {
  double sum = 0.0;
  for (double d : dihedrals) sum += d;
  return sum - (static_cast<double>(dihedrals.size()) - 2.0) * kPi;
}

double SolidAngles::total() const {
  double t = u + w;
  for (double x : v) t += x;
  return t;
}

SolidAngles solid_angles(const FlexState& s) {
  const Embedding& e = s.emb;
  const int N = e.N();
  const Dihedrals& d = s.adjusted;
  SolidAngles out;
  check_parallel(e.u, e.v, "u");
  check_parallel(e.w, e.v, "w");
  out.u = solid_angle(d.delta);
  out.w = solid_angle(d.Delta);
  for (int k = 1; k <= N; ++k) {
    check_parallel(e.vk(k), {e.vk(k + 1), e.u, e.vk(k - 1), e.w}, "v" + std::to_string(k));
    const double ds[4] = {at(d.delta, k), at(d.Delta, k), at(d.eps, k), at(d.eps, k - 1)};
    out.v.push_back(solid_angle(ds));
  }
  return out;
}

std::vector<std::pair<int, int>> solid_angle_pairs(SubType s, int N) {
  const int M = N / 2;
  std::vector<std::pair<int, int>> p;
  switch (s) {
    case SubType::I_OEE:
    case SubType::II_OEE:
      for (int k = 1; k <= M; ++k) p.emplace_back(k, k + M);
      break;
    case SubType::II_AEE:
      p.emplace_back(1, M + 1);
      for (int k = 2; k <= M; ++k) p.emplace_back(k, N - k + 2);
      break;
    default:
      p.emplace_back(1, 3);
      for (int k = 1; k <= M - 2; ++k) p.emplace_back(2 * k, 2 * k + 3);
      p.emplace_back(N - 2, N);
  }
  return p;
}

double RelationReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.residual);
  return m;
}

RelationReport dihedral_relations(const FlexState& st, SubType s) {
  const Dihedrals& d = st.raw;
  const int N = static_cast<int>(d.delta.size()), M = N / 2;
  RelationReport r;
  auto conj = [&](const std::string& label, double x, double y) { r.checks.push_back(nearest(label, x, {{-y, 2}})); };
  switch (s) {
    case SubType::I_OEE:
      for (int k = 1; k <= M; ++k) {
        conj(name("delta", k, "Delta", k + M), at(d.delta, k), at(d.Delta, k + M));
        conj(name("delta", k + M, "Delta", k), at(d.delta, k + M), at(d.Delta, k));
        conj(name("eps", k, "eps", k + M), at(d.eps, k), at(d.eps, k + M));
      }
      break;
    case SubType::II_AEE:
      conj(name("delta", 1, "Delta", 1), at(d.delta, 1), at(d.Delta, 1));
      for (int k = 2; k <= N; ++k) conj(name("delta", k, "Delta", N - k + 2), at(d.delta, k), at(d.Delta, N - k + 2));
      for (int k = 1; k <= N; ++k) conj(name("eps", k, "eps", N - k + 1), at(d.eps, k), at(d.eps, N - k + 1));
      break;
    case SubType::II_OEE:
      for (int k = 1; k <= M; ++k) {
        conj(name("delta", k, "delta", k + M), at(d.delta, k), at(d.delta, k + M));
        conj(name("Delta", k, "Delta", k + M), at(d.Delta, k), at(d.Delta, k + M));
        conj(name("eps", k, "eps", k + M), at(d.eps, k), at(d.eps, k + M));
      }
      break;
    default:
      for (const auto& [k, j] : solid_angle_pairs(s, N)) {
        const double Dj = at(d.Delta, j), dj = at(d.delta, j), ej = at(d.eps, j);
        r.checks.push_back(nearest(name("delta", k, "Delta", j), at(d.delta, k), {{Dj, 0}, {kPi - Dj, 1}, {-Dj, 2}}));
        r.checks.push_back(nearest(name("Delta", k, "delta", j), at(d.Delta, k), {{dj, 0}, {kPi - dj, 1}, {-dj, 2}}));
        r.checks.push_back(nearest(name("eps", k, "eps", j), at(d.eps, k), {{ej, 0}, {-ej, 2}}));
      }
  }
  return r;
}

bool ValidationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

ValidationReport validate_trace(const CapGeometry& g, const std::vector<FlexState>& trace) {
  const int N = g.N(), M = N / 2;
  const double scale = g.scale();
  const double LN = g.L(N);
  const auto pairs = solid_angle_pairs(g.subtype(), N);
  ValidationReport rep;
  rep.samples.resize(trace.size());
  std::vector<RelationReport> rel(trace.size());
  parallel_for(trace.size(), [&](size_t i) {
    const FlexState& s = trace[i];
    ValidationSample& v = rep.samples[i];
    v.eps1 = s.eps1;
    v.endpoint = s.endpoint;
    v.volume = oriented_volume(s.emb);
    v.mean_curvature = total_mean_curvature(s, g);
    v.closing_rate = s.closing_rate;
    v.closure_residual = s.emb.closure_residual;
    v.edge_error = max_edge_error(g, s.emb);
    v.sigma = solid_angles(s);
    v.pair_residual = std::abs(v.sigma.u + v.sigma.w - 4.0 * kPi);
    for (const auto& [a, b] : pairs)
      v.pair_residual = std::max(v.pair_residual, std::abs(at(v.sigma.v, a) + at(v.sigma.v, b) - 4.0 * kPi));
    rel[i] = dihedral_relations(s, g.subtype());
    v.relation_residual = rel[i].max_residual();
    for (size_t k = 0; k < s.adjusted.delta.size(); ++k)
      v.dihedral_sum += s.adjusted.delta[k] + s.adjusted.Delta[k] + s.adjusted.eps[k];
    v.solid_angle_sum = v.sigma.total();
  });

  double vol = 0.0, rate = 0.0, closure = 0.0, edge = 0.0, pair = 0.0, relr = 0.0, fixed = 0.0;
  std::vector<double> curv, dsum, ssum;
  for (const auto& v : rep.samples) {
    vol = std::max(vol, std::abs(v.volume) / (scale * scale * scale));
    if (!v.endpoint) rate = std::max(rate, std::abs(v.closing_rate) / (LN * LN));
    closure = std::max(closure, v.closure_residual / LN);
    edge = std::max(edge, v.edge_error / scale);
    pair = std::max(pair, v.pair_residual);
    relr = std::max(relr, v.relation_residual);
    curv.push_back(v.mean_curvature);
    dsum.push_back(v.dihedral_sum);
    ssum.push_back(v.solid_angle_sum);
    if (g.subtype() == SubType::II_OEE)
      fixed = std::max({fixed, std::abs(v.sigma.u - kTwoPi), std::abs(v.sigma.w - kTwoPi)});
    if (g.subtype() == SubType::II_AEE)
      fixed = std::max({fixed, std::abs(at(v.sigma.v, 1) - kTwoPi), std::abs(at(v.sigma.v, M + 1) - kTwoPi)});
  }
  int switches = 0;
  if (is_type3(g.subtype()) && !rel.empty()) {
    std::vector<int> locked(rel.front().checks.size(), -1);
    for (const auto& r : rel)
      for (size_t c = 0; c < r.checks.size(); ++c) {
        const int a = r.checks[c].alternative;
        if (a < 0) continue;
        if (locked[c] >= 0 && locked[c] != a) ++switches;
        locked[c] = a;
      }
  }
  rep.checks = {
      {"closure residual / L_N", closure, 1e-8},
      {"edge length error / scale", edge, 1e-8},
      {"oriented volume / scale^3", vol, 1e-6},
      {"total mean curvature variation", relative_variation(curv, scale), 1e-6},
      {"closing-edge derivative / L_N^2", rate, 1e-6},
      {"dihedral relations", relr, 1e-8},
      {"solid-angle pair sums", pair, 1e-8},
      {"adjusted dihedral sum variation", relative_variation(dsum, 1.0), 1e-6},
      {"solid angle sum variation", relative_variation(ssum, 1.0), 1e-6},
  };
  if (is_type3(g.subtype())) rep.checks.push_back({"relation alternative switches", static_cast<double>(switches), 0.0});
  if (g.subtype() == SubType::II_OEE) rep.checks.push_back({"apical solid angles = 2pi", fixed, 1e-8});
  if (g.subtype() == SubType::II_AEE) rep.checks.push_back({"v1, v_{M+1} solid angles = 2pi", fixed, 1e-8});
  return rep;
}

ValidationReport merge_reports(const std::vector<ValidationReport>& parts) {
  ValidationReport out;
  for (const auto& p : parts) {
    out.samples.insert(out.samples.end(), p.samples.begin(), p.samples.end());
    for (const auto& c : p.checks) {
      auto it = std::find_if(out.checks.begin(), out.checks.end(), [&](const CheckResult& x) { return x.name == c.name; });
      if (it == out.checks.end())
        out.checks.push_back(c);
      else
        it->value = std::max(it->value, c.value);
    }
  }
  return out;
}

ValidationReport validate_full(const CapGeometry& g, DihedralIdentifier di, const FlexionRange& range,
                               const ValidateOptions& opts) {
  std::vector<ValidationReport> parts;
  for (const auto& iv : range.intervals) parts.push_back(validate_trace(g, sample_trace(g, di, iv, opts.step_deg)));
  return merge_reports(parts);
}

}  // namespace flexspan

#include "flexspan/parameterization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "flexspan/construction.hpp"
#include "flexspan/errors.hpp"

namespace flexspan {
namespace {

bool open_angle(double x) { return std::isfinite(x) && x > 0.0 && x < kPi; }

struct Sas {
  double a, opp_b, opp_c;
};

Sas sas(double b, double c, double A) {
  double a = std::sqrt(b * b + c * c - 2.0 * b * c * std::cos(A));
  double Bang = std::atan2(b * std::sin(A), c - b * std::cos(A));
  return {a, Bang, kPi - A - Bang};
}

std::optional<std::array<double, 3>> sss(double a, double b, double c) {
  if (a + b <= c || a + c <= b || b + c <= a) return std::nullopt;
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const auto [x, y, z] = s;
  const double area4 = std::sqrt((x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z)));
  double A = std::atan2(area4, b * b + c * c - a * a);
  double B = std::atan2(area4, a * a + c * c - b * b);
  return std::array<double, 3>{A, B, kPi - A - B};
}

std::vector<double> real_roots(double A, double B, double C) {
  if (std::abs(A) < kCoeffEpsilon) {
    if (std::abs(B) < kCoeffEpsilon) return {};
    return {-C / B};
  }
  double disc = B * B - 4.0 * A * C;
  if (disc < -kDiscriminantClamp) return {};
  double s = std::sqrt(std::max(disc, 0.0));
  return {(-B + s) / (2.0 * A), (-B - s) / (2.0 * A)};
}

// Half-angle products of the angle pair at the vertex three steps back.
std::array<double, 4> seed_kc(double b1v, double B3) {
  return {t_h(b1v) * c_h(B3), -t_h(b1v) * t_h(B3), -c_h(b1v) * c_h(B3), c_h(b1v) * t_h(B3)};
}
std::array<double, 4> seed_kt(double b1v, double B3) {
  return {c_h(b1v) * c_h(B3), -c_h(b1v) * t_h(B3), -t_h(b1v) * c_h(B3), t_h(b1v) * t_h(B3)};
}
std::array<double, 4> step_kc(double bp, double Bp) {
  return {c_h(Bp) * t_h(bp), t_h(Bp) * c_h(bp), -t_h(Bp) * t_h(bp), -c_h(Bp) * c_h(bp)};
}
std::array<double, 4> step_kt(double bp, double Bp) {
  return {-t_h(Bp) * c_h(bp), -c_h(Bp) * t_h(bp), c_h(Bp) * c_h(bp), t_h(Bp) * t_h(bp)};
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// α_{N-1} and α_N from the folding equations.
std::pair<double, double> closing_alphas(const CapGeometry& g) {
  const int N = g.N();
  double odd = 0.0, even = 0.0;
  if (g.subtype() == SubType::III_OAE) {
    const int L = g.oas_index();
    for (int k = 1; k < N - 1; k += 2) odd += (k < L ? 1.0 : -1.0) * g.alpha(k);
    for (int k = 2; k < N; k += 2) even += (k < L ? 1.0 : -1.0) * g.alpha(k);
    return {odd, even};
  }
  for (int k = 1; k < N - 1; k += 2) odd += g.alpha(k);
  for (int k = 2; k < N; k += 2) even += g.alpha(k);
  const double K = g.winding();
  return {K * kPi - odd, K * kPi - even};
}

std::vector<CapGeometry> dedupe(std::vector<CapGeometry> in, double tol_deg) {
  std::vector<CapGeometry> out;
  const double tol = to_rad(tol_deg);
  for (auto& g : in) {
    bool dup = std::any_of(out.begin(), out.end(), [&](const CapGeometry& h) { return h.angle_distance(g) < tol; });
    if (!dup) out.push_back(std::move(g));
  }
  return out;
}

void face_from_sines(CapGeometry& g, int i, const std::string& face) {
  g.gamma(i) = kPi - g.alpha(i) - g.beta(i);
  if (!open_angle(g.gamma(i))) throw TriangleViolation(face);
  g.L(i) = g.l(i) * std::sin(g.alpha(i)) / std::sin(g.gamma(i));
  g.l(i + 1) = g.l(i) * std::sin(g.beta(i)) / std::sin(g.gamma(i));
}

}  // namespace

CapGeometry expand_type12(const ParameterSet& p) {
  p.validate();
  if (!is_type12(p.subtype)) throw ConstraintViolation("subtype", "expected a length-specified sub-type");
  const int N = p.N, M = p.M();
  CapGeometry g(p.subtype, N);
  switch (p.subtype) {
    case SubType::I_OEE:
      for (int k = 1; k <= N; ++k) g.l(k) = p.l[static_cast<size_t>(k - 1)];
      for (int k = 1; k <= M; ++k) {
        g.m(k) = g.l(k + M);
        g.m(k + M) = g.l(k);
        g.L(k) = g.L(k + M) = p.base[static_cast<size_t>(k - 1)];
      }
      break;
    case SubType::II_AEE:
      for (int k = 1; k <= N; ++k) g.l(k) = p.l[static_cast<size_t>(k - 1)];
      g.m(1) = g.l(1);
      for (int k = 2; k <= N; ++k) g.m(k) = g.l(N - k + 2);
      for (int k = 1; k <= M; ++k) g.L(k) = g.L(N + 1 - k) = p.base[static_cast<size_t>(k - 1)];
      break;
    default:
      for (int k = 1; k <= M; ++k) {
        const auto i = static_cast<size_t>(k - 1);
        g.l(k) = g.l(k + M) = p.l[i];
        g.m(k) = g.m(k + M) = p.m[i];
        g.L(k) = g.L(k + M) = p.base[i];
      }
  }
  auto law_of_cosines = [](double a, double b, double c) {
    return std::acos(std::clamp((b * b + c * c - a * a) / (2.0 * b * c), -1.0, 1.0));
  };
  for (int k = 1; k <= N; ++k) {
    const double lk = g.l(k), lk1 = g.l(k + 1), Lk = g.L(k);
    if (lk + lk1 <= Lk || lk + Lk <= lk1 || lk1 + Lk <= lk) throw TriangleViolation("f" + std::to_string(k));
    g.alpha(k) = law_of_cosines(Lk, lk, lk1);
    g.beta(k) = law_of_cosines(lk1, lk, Lk);
    g.gamma(k) = law_of_cosines(lk, lk1, Lk);
    const double mk = g.m(k), mk1 = g.m(k + 1);
    if (mk + mk1 <= Lk || mk + Lk <= mk1 || mk1 + Lk <= mk) throw TriangleViolation("F" + std::to_string(k));
    g.A(k) = law_of_cosines(Lk, mk, mk1);
    g.B(k) = law_of_cosines(mk1, mk, Lk);
    g.Gamma(k) = law_of_cosines(mk, mk1, Lk);
  }
  return g;
}

double FoldingConstraintReport::max() const {
  return std::max({std::abs(alpha_open), std::abs(alpha_second), std::abs(A_open), std::abs(A_second)});
}

std::pair<double, double> folding_residual_signed(SubType s, int L, int K, const std::vector<double>& a) {
  const int N = static_cast<int>(a.size());
  double first = 0.0, second = 0.0;
  for (int k = 1; k <= N; ++k) {
    const double x = a[static_cast<size_t>(k - 1)];
    const double alt = (k % 2 == 1) ? x : -x;
    if (s == SubType::III_OAE) {
      const double side = k < L ? 1.0 : -1.0;
      first += side * x;
      second += side * alt;
    } else {
      first += x;
      second += alt;
    }
  }
  if (s != SubType::III_OAE) first -= 2.0 * K * kPi;
  return {first, second};
}

std::pair<double, double> folding_residual_reduced(SubType s, int L, int K, const std::vector<double>& a) {
  const int N = static_cast<int>(a.size());
  double odd = 0.0, even = 0.0;
  for (int k = 1; k <= N; ++k) {
    const double x = a[static_cast<size_t>(k - 1)];
    const double side = (s == SubType::III_OAE && k >= L) ? -1.0 : 1.0;
    (k % 2 == 1 ? odd : even) += side * x;
  }
  if (s != SubType::III_OAE) {
    odd -= K * kPi;
    even -= K * kPi;
  }
  return {odd, even};
}

FoldingConstraintReport check_folding_constraints(const CapGeometry& g) {
  std::vector<double> al, A;
  for (int k = 1; k <= g.N(); ++k) {
    al.push_back(g.alpha(k));
    A.push_back(g.A(k));
  }
  auto ra = folding_residual_signed(g.subtype(), g.oas_index(), g.winding(), al);
  auto rA = folding_residual_signed(g.subtype(), g.oas_index(), g.winding(), A);
  return {ra.first, ra.second, rA.first, rA.second};
}

CapGeometry seed_faces(const ParameterSet& p) {
  p.validate();
  if (!is_type3(p.subtype)) throw ConstraintViolation("subtype", "expected a third-type sub-type");
  CapGeometry g(p.subtype, p.N);
  g.set_oas_index(p.subtype == SubType::III_OAE ? p.L : 0);
  g.set_winding(p.subtype == SubType::III_OAS ? p.K : 0);
  g.l(1) = p.l1;
  g.alpha(1) = p.alpha1;
  g.beta(1) = p.beta1;
  g.alpha(2) = p.alpha2;
  g.beta(2) = p.beta2;
  for (size_t i = 0; i < p.odd_alpha.size(); ++i) g.alpha(3 + 2 * static_cast<int>(i)) = p.odd_alpha[i];
  face_from_sines(g, 1, "f1");
  g.Gamma(1) = opposite_angle(g.is_oas(2), g.beta(2));
  g.B(2) = opposite_angle(g.is_oas(2), g.gamma(1));
  face_from_sines(g, 2, "f2");
  g.B(3) = opposite_angle(g.is_oas(3), g.gamma(2));
  return g;
}

std::vector<CapGeometry> solve_seed_stage(const ParameterSet& p) {
  const CapGeometry g = seed_faces(p);
  const bool oas3 = g.is_oas(3);
  const double a = g.L(2) * std::sin(g.Gamma(1)) / (g.L(1) * std::sin(g.B(2)));
  const double b = (g.L(2) * std::cos(g.Gamma(1)) - g.L(1) * std::cos(g.B(2))) / (g.L(1) * std::sin(g.B(2)));

  struct Cand {
    double x, y;
  };
  std::vector<Cand> cands;
  for (double k : seed_kc(g.beta(1), g.B(3))) {
    auto r = oas3 ? real_roots(k + a, 2.0 * b * k, -k * (a * k + 1.0)) : real_roots(k - a, -2.0 * b * k, k * (a * k - 1.0));
    for (double x : r) cands.push_back({x, x / k});
  }
  for (double k : seed_kt(g.beta(1), g.B(3))) {
    auto r = oas3 ? real_roots(k - a, 2.0 * b * k, k * (a * k - 1.0)) : real_roots(k + a, -2.0 * b * k, -k * (a * k + 1.0));
    for (double x : r) cands.push_back({x, x != 0.0 ? k / x : -1.0});
  }

  std::vector<CapGeometry> out;
  for (const auto& c : cands) {
    if (!(c.x > 0.0) || !(c.y > 0.0) || !std::isfinite(c.x) || !std::isfinite(c.y)) continue;
    CapGeometry h = g;
    h.beta(3) = 2.0 * std::atan(1.0 / c.x);
    h.B(1) = 2.0 * std::atan(1.0 / c.y);
    h.Gamma(2) = opposite_angle(oas3, h.beta(3));
    h.A(1) = kPi - h.Gamma(1) - h.B(1);
    h.A(2) = kPi - h.B(2) - h.Gamma(2);
    if (!open_angle(h.A(1)) || !open_angle(h.A(2))) continue;
    h.m(1) = h.L(1) * std::sin(h.Gamma(1)) / std::sin(h.A(1));
    h.m(2) = h.L(1) * std::sin(h.B(1)) / std::sin(h.A(1));
    const double m2b = h.L(2) * std::sin(h.Gamma(2)) / std::sin(h.A(2));
    if (rel_diff(m2b, h.m(2)) > 1e-8) continue;
    h.m(3) = h.L(2) * std::sin(h.B(2)) / std::sin(h.A(2));
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<CapGeometry> advance_stage(const CapGeometry& prefix, int J) {
  if (J < 5 || J % 2 == 0 || J > prefix.N() - 1) throw OutOfRange("stage index must be odd and in [5, N-1]");
  CapGeometry h = prefix;
  const int i = J - 2, j = J - 1;
  h.gamma(i) = kPi - h.alpha(i) - h.beta(i);
  if (!open_angle(h.gamma(i))) return {};
  h.L(i) = h.l(i) * std::sin(h.alpha(i)) / std::sin(h.gamma(i));
  h.l(i + 1) = h.l(i) * std::sin(h.beta(i)) / std::sin(h.gamma(i));
  const Sas s = sas(h.m(i), h.L(i), h.B(i));
  h.m(i + 1) = s.a;
  h.Gamma(i) = s.opp_b;
  h.A(i) = s.opp_c;
  if (!open_angle(h.Gamma(i)) || !open_angle(h.A(i))) return {};
  h.beta(j) = opposite_angle(h.is_oas(j), h.Gamma(i));
  h.B(j) = opposite_angle(h.is_oas(j), h.gamma(i));

  const double a = h.m(j) * std::sin(h.B(j)) / (h.l(j) * std::sin(h.beta(j)));
  const double b = (h.m(j) * std::cos(h.B(j)) - h.l(j) * std::cos(h.beta(j))) / (h.l(j) * std::sin(h.beta(j)));
  const double sg = h.is_oas(J) ? 1.0 : -1.0;
  struct Cand {
    double x, y;
  };
  std::vector<Cand> cands;
  for (double k : step_kc(h.beta(J - 3), h.B(J - 3)))
    for (double y : real_roots(k - a, sg * 2.0 * b * k, k * (a * k - 1.0))) cands.push_back({y / k, y});
  for (double k : step_kt(h.beta(J - 3), h.B(J - 3)))
    for (double y : real_roots(k + a, sg * 2.0 * b * k, -k * (a * k + 1.0))) cands.push_back({y != 0.0 ? k / y : -1.0, y});

  std::vector<CapGeometry> out;
  for (const auto& c : cands) {
    if (!(c.x > 0.0) || !(c.y > 0.0) || !std::isfinite(c.x) || !std::isfinite(c.y)) continue;
    CapGeometry q = h;
    q.beta(J) = 2.0 * std::atan(1.0 / c.x);
    q.B(J) = 2.0 * std::atan(1.0 / c.y);
    q.gamma(j) = opposite_angle(q.is_oas(J), q.B(J));
    q.Gamma(j) = opposite_angle(q.is_oas(J), q.beta(J));
    q.alpha(j) = kPi - q.beta(j) - q.gamma(j);
    q.A(j) = kPi - q.B(j) - q.Gamma(j);
    if (!open_angle(q.alpha(j)) || !open_angle(q.A(j))) continue;
    q.L(j) = q.l(j) * std::sin(q.alpha(j)) / std::sin(q.gamma(j));
    q.l(J) = q.l(j) * std::sin(q.beta(j)) / std::sin(q.gamma(j));
    q.m(J) = q.L(j) * std::sin(q.B(j)) / std::sin(q.A(j));
    const double mb = q.L(j) * std::sin(q.Gamma(j)) / std::sin(q.A(j));
    if (rel_diff(mb, q.m(j)) > 1e-7) continue;
    out.push_back(std::move(q));
  }
  return out;
}

std::optional<CapGeometry> close_suspension(const CapGeometry& prefix, double tol) {
  const int N = prefix.N();
  CapGeometry h = prefix;
  auto [aN1, aN] = closing_alphas(h);
  h.alpha(N - 1) = aN1;
  h.alpha(N) = aN;
  if (!open_angle(aN1) || !open_angle(aN)) return std::nullopt;
  const int i = N - 1;
  h.gamma(i) = kPi - h.alpha(i) - h.beta(i);
  if (!open_angle(h.gamma(i))) return std::nullopt;
  h.L(i) = h.l(i) * std::sin(h.alpha(i)) / std::sin(h.gamma(i));
  h.l(N) = h.l(i) * std::sin(h.beta(i)) / std::sin(h.gamma(i));
  const Sas sF = sas(h.m(i), h.L(i), h.B(i));
  h.m(N) = sF.a;
  h.Gamma(i) = sF.opp_b;
  h.A(i) = sF.opp_c;
  if (!open_angle(h.Gamma(i)) || !open_angle(h.A(i))) return std::nullopt;
  const Sas sf = sas(h.l(1), h.l(N), h.alpha(N));
  h.L(N) = sf.a;
  h.beta(N) = sf.opp_b;
  h.gamma(N) = sf.opp_c;
  auto t = sss(h.L(N), h.m(1), h.m(N));
  if (!t) return std::nullopt;
  h.A(N) = (*t)[0];
  h.B(N) = (*t)[1];
  h.Gamma(N) = (*t)[2];
  const double r = std::max({std::abs(h.beta(N) - opposite_angle(h.is_oas(N), h.Gamma(N - 1))),
                             std::abs(h.B(N) - opposite_angle(h.is_oas(N), h.gamma(N - 1))),
                             std::abs(h.gamma(N) - opposite_angle(h.is_oas(1), h.B(1))),
                             std::abs(h.Gamma(N) - opposite_angle(h.is_oas(1), h.beta(1)))});
  if (!(r <= tol)) return std::nullopt;
  return h;
}

std::optional<CapGeometry> close_octahedron_by_assignment(const CapGeometry& prefix, double tol) {
  if (prefix.N() != 4) throw OutOfRange("assignment closing applies to N = 4 only");
  CapGeometry h = prefix;
  auto [a3, a4] = closing_alphas(h);
  h.alpha(3) = a3;
  h.alpha(4) = a4;
  h.gamma(3) = kPi - h.alpha(3) - h.beta(3);
  h.B(4) = opposite_angle(h.is_oas(4), h.gamma(3));
  h.gamma(4) = opposite_angle(h.is_oas(1), h.B(1));
  h.beta(4) = kPi - h.alpha(4) - h.gamma(4);
  h.Gamma(3) = opposite_angle(h.is_oas(4), h.beta(4));
  h.Gamma(4) = opposite_angle(h.is_oas(1), h.beta(1));
  h.A(3) = kPi - h.B(3) - h.Gamma(3);
  h.A(4) = kPi - h.B(4) - h.Gamma(4);
  for (double x : {h.alpha(3), h.alpha(4), h.gamma(3), h.gamma(4), h.beta(4), h.Gamma(3), h.A(3), h.A(4), h.B(4),
                   h.Gamma(4)})
    if (!open_angle(x)) return std::nullopt;
  h.L(3) = h.l(3) * std::sin(h.alpha(3)) / std::sin(h.gamma(3));
  h.l(4) = h.l(3) * std::sin(h.beta(3)) / std::sin(h.gamma(3));
  h.L(4) = h.l(4) * std::sin(h.alpha(4)) / std::sin(h.gamma(4));
  const double l1b = h.l(4) * std::sin(h.beta(4)) / std::sin(h.gamma(4));
  h.m(4) = h.m(3) * std::sin(h.B(3)) / std::sin(h.Gamma(3));
  const double L3b = h.m(3) * std::sin(h.A(3)) / std::sin(h.Gamma(3));
  const double m1b = h.m(4) * std::sin(h.B(4)) / std::sin(h.Gamma(4));
  const double L4b = h.m(4) * std::sin(h.A(4)) / std::sin(h.Gamma(4));
  const double r = std::max({rel_diff(l1b, h.l(1)), rel_diff(L3b, h.L(3)), rel_diff(m1b, h.m(1)), rel_diff(L4b, h.L(4))});
  if (!(r <= tol)) return std::nullopt;
  return h;
}

int third_type_partner(int N, int k) {
  if (k == 3) return 1;
  if (k == N) return N - 2;
  if (k >= 5 && k % 2 == 1 && k <= N - 1) return k - 3;
  return 0;
}

bool partial_construction_filter(const CapGeometry& g, int stage) {
  if (stage < 3) return true;
  const double eps1 = 0.5 * kPi;
  Embedding e0 = place_initial_faces(g, eps1);
  std::vector<double> cos_eps(static_cast<size_t>(g.N() + 1), 0.0);
  cos_eps[1] = std::cos(eps1);
  auto pair_ok = [&](int k) {
    const int p = third_type_partner(g.N(), k);
    return p == 0 || p > k || std::abs(cos_eps[static_cast<size_t>(k)] - cos_eps[static_cast<size_t>(p)]) < 1e-6;
  };
  std::function<bool(int, double, std::vector<Vec3>&)> rec = [&](int k, double eps_prev, std::vector<Vec3>& v) -> bool {
    const VertexAngles va = g.vertex_angles(k);
    QuadraticCoeffs q;
    try {
      q = vertex_quadratic(va, eps_prev);
    } catch (const Error&) {
      return false;
    }
    for (int branch : {0, 1}) {
      auto d = try_solve_dihedral(q, branch);
      if (!d) continue;
      if (k == stage) {
        double ek;
        try {
          ek = propagate_epsilon(va, *d, eps_prev);
        } catch (const Error&) {
          continue;
        }
        cos_eps[static_cast<size_t>(k)] = std::cos(ek);
        if (pair_ok(k)) return true;
        continue;
      }
      v[static_cast<size_t>(k + 1)] =
          place_next_vertex(g, e0.u, v[static_cast<size_t>(k - 1)], v[static_cast<size_t>(k)], k, *d);
      const double ek = dihedral(v[static_cast<size_t>(k)], v[static_cast<size_t>(k + 1)], e0.w, e0.u);
      cos_eps[static_cast<size_t>(k)] = std::cos(ek);
      if (!pair_ok(k)) continue;
      if (rec(k + 1, ek, v)) return true;
    }
    return false;
  };
  std::vector<Vec3> v(static_cast<size_t>(g.N() + 2), Vec3::Zero());
  v[1] = e0.v[0];
  v[2] = e0.v[1];
  return rec(2, eps1, v);
}

std::vector<CapGeometry> complete_octahedron(const ParameterSet& p) {
  if (p.N != 4) throw ConstraintViolation("N", "octahedral completion needs N = 4");
  std::vector<CapGeometry> out;
  for (const auto& g : solve_seed_stage(p))
    if (auto h = close_octahedron_by_assignment(g)) out.push_back(std::move(*h));
  out = dedupe(std::move(out), 1e-7);
  if (out.empty()) throw NoCompletion("no realizable completion");
  return out;
}

std::vector<CapGeometry> complete_suspension(const ParameterSet& p, const CompletionOptions& opts) {
  auto filter = [&](std::vector<CapGeometry> in, int stage) {
    if (!opts.use_filter) return in;
    std::vector<CapGeometry> kept;
    for (auto& g : in)
      if (partial_construction_filter(g, stage)) kept.push_back(std::move(g));
    return kept;
  };
  std::vector<CapGeometry> cur = filter(solve_seed_stage(p), 3);
  if (cur.empty()) throw RealizabilityFailure(3);
  for (int J = 5; J <= p.N - 1; J += 2) {
    std::vector<CapGeometry> next;
    for (const auto& g : cur) {
      auto s = advance_stage(g, J);
      for (auto& h : s) next.push_back(std::move(h));
    }
    cur = filter(std::move(next), J);
    if (cur.empty()) throw RealizabilityFailure(J);
  }
  std::vector<CapGeometry> out;
  for (const auto& g : cur)
    if (auto h = close_suspension(g)) out.push_back(std::move(*h));
  out = dedupe(std::move(out), opts.merge_tolerance_deg);
  if (out.empty()) throw NoCompletion("no realizable completion");
  return out;
}

double apical_angle_crosscheck(const CapGeometry& g) {
  const int N = g.N();
  double worst = 0.0;
  for (int k = 1; k <= N; ++k) {
    double expected;
    if (g.subtype() == SubType::III_OAE) {
      const int L = g.oas_index();
      if (k == 1)
        expected = kPi - g.alpha(N) - g.beta(N) - g.beta(2);
      else if (k == N)
        expected = -kPi + g.alpha(N - 1) + g.beta(N - 1) + g.beta(1);
      else if (k == L - 1)
        expected = -kPi + g.alpha(L - 2) + g.beta(L - 2) + g.beta(L);
      else if (k == L)
        expected = kPi - g.alpha(L - 1) - g.beta(L - 1) - g.beta(L + 1);
      else
        expected = g.alpha(k - 1) + g.beta(k - 1) - g.beta(k + 1);
    } else {
      expected = kPi - opposite_angle(g.is_oas(k), g.gamma(k - 1)) - opposite_angle(g.is_oas(k + 1), g.beta(k + 1));
    }
    worst = std::max(worst, std::abs(g.A(k) - expected));
  }
  return worst;
}

double opposite_angle_residual(const CapGeometry& g) {
  double worst = 0.0;
  for (int k = 1; k <= g.N(); ++k) {
    worst = std::max(worst, std::abs(g.Gamma(k - 1) - opposite_angle(g.is_oas(k), g.beta(k))));
    worst = std::max(worst, std::abs(g.B(k) - opposite_angle(g.is_oas(k), g.gamma(k - 1))));
  }
  return worst;
}

}  // namespace flexspan

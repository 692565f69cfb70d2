#include "flexspan/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "flexspan/errors.hpp"

namespace flexspan {

Mat3 rot_z(double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  Mat3 m;
  m << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return m;
}

Mat3 rot_x(double delta) {
  const double c = std::cos(delta), s = std::sin(delta);
  Mat3 m;
  m << 1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c;
  return m;
}

Mat3 rot_axis(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

Vec3 rotate(const Vec3& v, const Vec3& axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return v * c + axis.cross(v) * s + axis * axis.dot(v) * (1.0 - c);
}

double dihedral(const Vec3& O, const Vec3& X, const Vec3& P, const Vec3& Q) {
  const Vec3 e = (X - O).normalized();
  const Vec3 p = reject(P - O, e);
  const Vec3 q = reject(Q - O, e);
  return wrap_two_pi(std::atan2(p.cross(q).dot(e), p.dot(q)));
}

double dihedral_rate(const Vec3& O, const Vec3& X, const Vec3& P, const Vec3& Q,
                     const Vec3& dO, const Vec3& dX, const Vec3& dP, const Vec3& dQ) {
  const Vec3 d = X - O;
  const double n = d.norm();
  const Vec3 e = d / n;
  const Vec3 dd = dX - dO;
  const Vec3 de = (dd - e * e.dot(dd)) / n;

  auto perp_and_rate = [&](const Vec3& a, const Vec3& da, Vec3& p, Vec3& dp) {
    const double ae = a.dot(e);
    p = a - ae * e;
    dp = da - (da.dot(e) + a.dot(de)) * e - ae * de;
  };
  Vec3 p, dp, q, dq;
  perp_and_rate(P - O, dP - dO, p, dp);
  perp_and_rate(Q - O, dQ - dO, q, dq);

  const Vec3 pq = p.cross(q);
  const double y = pq.dot(e);
  const double x = p.dot(q);
  const double dy = (dp.cross(q) + p.cross(dq)).dot(e) + pq.dot(de);
  const double dx = dp.dot(q) + p.dot(dq);
  return (x * dy - y * dx) / (x * x + y * y);
}

double corner_angle(const Vec3& V, const Vec3& P, const Vec3& Q) {
  const Vec3 a = P - V, b = Q - V;
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

bool VertexAngles::valid() const {
  for (double x : {beta, gamma_prev, Gamma_prev, B}) {
    if (!(x > 0.0 && x < kPi)) return false;
  }
  return true;
}

double c5_residual(double a1, double a2, double a3, double a4, double d2, double d3) {
  const double s1 = std::sin(a1), c1 = std::cos(a1);
  const double s2 = std::sin(a2), c2 = std::cos(a2);
  const double s3 = std::sin(a3), c3 = std::cos(a3);
  return s1 * c2 * s3 * std::cos(d2) * std::cos(d3) - s1 * s3 * std::sin(d2) * std::sin(d3) -
         s1 * s2 * c3 * std::cos(d2) - c1 * s2 * s3 * std::cos(d3) + std::cos(a4) - c1 * c2 * c3;
}

C5Partials c5_partials(double a1, double a2, double a3, double /*a4*/, double d2, double d3) {
  const double s1 = std::sin(a1), c1 = std::cos(a1);
  const double s2 = std::sin(a2), c2 = std::cos(a2);
  const double s3 = std::sin(a3), c3 = std::cos(a3);
  const double A = s1 * c2 * s3, Bc = -s1 * s3, C = -s1 * s2 * c3, D = -c1 * s2 * s3;
  C5Partials out;
  out.d_delta = -A * std::sin(d2) * std::cos(d3) + Bc * std::cos(d2) * std::sin(d3) - C * std::sin(d2);
  out.d_eps = -A * std::cos(d2) * std::sin(d3) + Bc * std::sin(d2) * std::cos(d3) - D * std::sin(d3);
  return out;
}

double vertex_residual(const VertexAngles& v, double delta, double eps_prev) {
  return c5_residual(v.beta, v.gamma_prev, v.Gamma_prev, v.B, delta, eps_prev);
}

C5Partials vertex_partials(const VertexAngles& v, double delta, double eps_prev) {
  return c5_partials(v.beta, v.gamma_prev, v.Gamma_prev, v.B, delta, eps_prev);
}

QuadraticCoeffs vertex_quadratic(const VertexAngles& v, double eps_prev) {
  const double s1 = std::sin(v.beta), c1 = std::cos(v.beta);
  const double s2 = std::sin(v.gamma_prev), c2 = std::cos(v.gamma_prev);
  const double s3 = std::sin(v.Gamma_prev), c3 = std::cos(v.Gamma_prev);
  const double A = s1 * c2 * s3;
  const double B = -s1 * s3;
  const double C = -s1 * s2 * c3;
  const double D = -c1 * s2 * s3;
  const double E = std::cos(v.B) - c1 * c2 * c3;
  const double ce = std::cos(eps_prev), se = std::sin(eps_prev);
  QuadraticCoeffs q{(E - C) + (D - A) * ce, 2.0 * B * se, (E + C) + (D + A) * ce};
  if (std::abs(q.a) < kCoeffEpsilon && std::abs(q.b) < kCoeffEpsilon && std::abs(q.c) < kCoeffEpsilon) {
    throw DegenerateVertex();
  }
  return q;
}

namespace {

enum class RootStatus { kOk, kNoRoot, kDegenerate };

RootStatus root_of(const QuadraticCoeffs& q, int branch, double snap, double& t) {
  if (std::abs(q.a) < kCoeffEpsilon) {
    if (std::abs(q.b) < kCoeffEpsilon) return RootStatus::kDegenerate;
    t = -q.c / q.b;
    return RootStatus::kOk;
  }
  double disc = q.discriminant();
  if (std::abs(disc) < snap) disc = 0.0;
  if (disc < -kDiscriminantClamp) return RootStatus::kNoRoot;
  const double s = std::sqrt(std::max(disc, 0.0));
  t = branch ? (-q.b + s) / (2.0 * q.a) : (-q.b - s) / (2.0 * q.a);
  return RootStatus::kOk;
}

}  // namespace

std::optional<double> try_solve_dihedral(const QuadraticCoeffs& q, int branch, double snap) {
  double t = 0.0;
  if (root_of(q, branch, snap, t) != RootStatus::kOk) return std::nullopt;
  return wrap_two_pi(2.0 * std::atan(t));
}

double solve_dihedral(const QuadraticCoeffs& q, int branch, double snap) {
  double t = 0.0;
  switch (root_of(q, branch, snap, t)) {
    case RootStatus::kNoRoot:
      throw NoRealRoot(0, q.discriminant());
    case RootStatus::kDegenerate:
      throw DegenerateQuadratic();
    case RootStatus::kOk:
      break;
  }
  return wrap_two_pi(2.0 * std::atan(t));
}

VertexStar vertex_star(const VertexAngles& v, double delta, double eps_prev) {
  VertexStar s;
  s.to_prev = Vec3(1.0, 0.0, 0.0);
  s.to_u = Vec3(std::cos(v.gamma_prev), std::sin(v.gamma_prev), 0.0);
  s.to_w = Vec3(std::cos(v.Gamma_prev), std::sin(v.Gamma_prev) * std::cos(eps_prev),
                std::sin(v.Gamma_prev) * std::sin(eps_prev));
  const Vec3 e = s.to_u;
  const Vec3 q = reject(s.to_prev, e).normalized();
  const Vec3 p = rotate(q, e, -delta);
  s.to_next = std::cos(v.beta) * e + std::sin(v.beta) * p;
  return s;
}

double c6_cos_epsilon(const VertexAngles& v, double eps_prev) {
  return (std::cos(v.gamma_prev) * std::cos(v.Gamma_prev) +
          std::sin(v.gamma_prev) * std::sin(v.Gamma_prev) * std::cos(eps_prev) -
          std::cos(v.B) * std::cos(v.beta)) /
         (std::sin(v.B) * std::sin(v.beta));
}

double propagate_epsilon(const VertexAngles& v, double delta_k, double eps_prev) {
  const double c = c6_cos_epsilon(v, eps_prev);
  if (std::abs(c) > 1.0 + 1e-9) {
    throw OutOfRange("|cos eps| = " + std::to_string(std::abs(c)) + " exceeds 1");
  }
  const VertexStar s = vertex_star(v, delta_k, eps_prev);
  return dihedral(Vec3::Zero(), s.to_next, s.to_w, s.to_u);
}

double star_Delta(const VertexAngles& v, double delta_k, double eps_prev) {
  const VertexStar s = vertex_star(v, delta_k, eps_prev);
  return dihedral(s.to_w, Vec3::Zero(), s.to_next, s.to_prev);
}

Vec3 cap_vertex_forward(std::span<const double> alpha, std::span<const double> delta, int k) {
  const Vec3 v1(1.0, 0.0, 0.0);
  if (k == 1) return v1;
  Mat3 m = rot_z(alpha[1]);
  for (int i = 2; i <= k - 1; ++i) m = m * rot_x(kPi - delta[i]) * rot_z(alpha[i]);
  return m * v1;
}

Vec3 cap_vertex_backward(std::span<const double> alpha, std::span<const double> delta, int k) {
  const int n = static_cast<int>(alpha.size()) - 1;
  const Vec3 v1(1.0, 0.0, 0.0);
  Mat3 m = rot_x(delta[1] - kPi) * rot_z(-alpha[n]);
  for (int i = n; i >= k + 1; --i) m = m * rot_x(delta[i] - kPi) * rot_z(-alpha[i - 1]);
  return m * v1;
}

std::vector<DependentDihedrals> dependent_dihedrals(std::span<const double> face_angles,
                                                    std::span<const double> known_dihedrals) {
  const int n = static_cast<int>(face_angles.size());
  if (n < 4 || static_cast<int>(known_dihedrals.size()) != n - 3) {
    throw Unsolvable("dependent_dihedrals needs N >= 4 face angles and N-3 dihedrals");
  }
  std::vector<double> alpha(n + 1, 0.0), delta(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) alpha[i] = face_angles[i - 1];
  for (int i = 1; i <= n - 3; ++i) delta[i] = known_dihedrals[i - 1];

  const double s_nm2 = std::sin(alpha[n - 2]);
  if (std::abs(s_nm2) < 1e-12) throw Unsolvable("sin(alpha_{N-2}) vanishes");

  Mat3 M = rot_z(alpha[n]);
  for (int i = 1; i <= n - 3; ++i) M = M * rot_x(kPi - delta[i]) * rot_z(alpha[i]);
  const Mat3 P = M.transpose();

  const double ca = std::cos(alpha[n - 1]), sa = std::sin(alpha[n - 1]);
  const double R = std::hypot(M(0, 1), M(0, 2));
  if (R < 1e-12 || std::abs(sa) < 1e-12) throw Unsolvable("closure equation has no dependence on delta_N");
  const double r = (std::cos(alpha[n - 2]) - M(0, 0) * ca) / sa;
  if (std::abs(r) > R * (1.0 + 1e-9)) throw Unsolvable("cap does not close for the given dihedrals");
  const double phi = std::atan2(M(0, 2), M(0, 1));
  const double spread = std::acos(std::clamp(r / R, -1.0, 1.0));

  std::vector<DependentDihedrals> out;
  for (double dn : {phi + spread, phi - spread}) {
    const double S = M(0, 1) * std::cos(dn) + M(0, 2) * std::sin(dn);
    const double cy = M(0, 0) * sa - ca * S;
    const double sy = M(0, 1) * std::sin(dn) - M(0, 2) * std::cos(dn);
    const double dnm1 = std::atan2(sy, cy);
    const double cz = -P(1, 0) * ca - sa * (P(1, 1) * std::cos(dn) + P(1, 2) * std::sin(dn));
    const double sz = P(2, 0) * ca + sa * (P(2, 1) * std::cos(dn) + P(2, 2) * std::sin(dn));
    const double dnm2 = std::atan2(sz, cz);

    DependentDihedrals d{wrap_two_pi(dnm2), wrap_two_pi(dnm1), wrap_two_pi(dn), 0.0};
    delta[n - 2] = d.delta_nm2;
    delta[n - 1] = d.delta_nm1;
    delta[n] = d.delta_n;
    for (int k = 1; k <= n; ++k) {
      const double gap = (cap_vertex_forward(alpha, delta, k) - cap_vertex_backward(alpha, delta, k)).norm();
      d.residual = std::max(d.residual, gap);
    }
    const bool duplicate = !out.empty() && std::abs(wrap_pi(out.front().delta_n - d.delta_n)) < 1e-12;
    if (!duplicate && d.residual < 1e-9) out.push_back(d);
  }
  if (out.empty()) throw Unsolvable("no dependent dihedral solution reproduces the cap");
  return out;
}

}  // namespace flexspan

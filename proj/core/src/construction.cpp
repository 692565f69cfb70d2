#include "flexspan/construction.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "flexspan/errors.hpp"

namespace flexspan {
namespace {

Vec3 unit(const Vec3& v) { return v / v.norm(); }

Vec3 nan_vec() { return Vec3::Constant(std::numeric_limits<double>::quiet_NaN()); }

}  // namespace

void DihedralIdentifier::set_bit(int k, bool on) {
  const std::uint32_t b = 1u << (k - 1);
  value = on ? (value | b) : (value & ~b);
}

std::uint32_t DihedralIdentifier::construction_bits() const {
  std::uint32_t out = 0;
  for (int k = 2; k <= N - 1; ++k)
    if (bit(k)) out |= 1u << (k - 1);
  return out;
}

std::string DihedralIdentifier::hex() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%X", value);
  return buf;
}

std::uint32_t parse_di_value(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw ConstraintViolation("di", "empty identifier");
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s = s.substr(2);
    base = 16;
  } else if (s.back() == 'h' || s.back() == 'H') {
    s.pop_back();
    base = 16;
  }
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos, base);
  } catch (const std::exception&) {
    throw ConstraintViolation("di", "not a number: " + text);
  }
  if (pos != s.size() || v > 0xffffffffUL) throw ConstraintViolation("di", "not a valid identifier: " + text);
  return static_cast<std::uint32_t>(v);
}

Embedding place_initial_faces(const CapGeometry& g, double eps1) {
  Embedding e;
  e.eps1 = eps1;
  e.v.assign(static_cast<size_t>(g.N()), nan_vec());
  e.u = Vec3(g.l(1) * std::sin(g.beta(1)), 0.0, -g.l(1) * std::cos(g.beta(1)));
  const double r = g.m(1) * std::sin(g.B(1));
  e.w = Vec3(r * std::cos(eps1), r * std::sin(eps1), -g.m(1) * std::cos(g.B(1)));
  e.v[0] = Vec3::Zero();
  e.v[1] = Vec3(0.0, 0.0, -g.L(1));
  return e;
}

Vec3 place_next_vertex(const CapGeometry& g, const Vec3& u, const Vec3& v_prev, const Vec3& v_k, int k,
                       double delta) {
  const Vec3 e = unit(u - v_k);
  const Vec3 q = unit(reject(v_prev - v_k, e));
  const Vec3 p = rotate(q, e, -delta);
  return v_k + g.L(k) * (std::cos(g.beta(k)) * e + std::sin(g.beta(k)) * p);
}

double measure_delta(const Embedding& emb, int k) { return dihedral(emb.u, emb.vk(k), emb.vk(k - 1), emb.vk(k + 1)); }
double measure_Delta(const Embedding& emb, int k) { return dihedral(emb.w, emb.vk(k), emb.vk(k + 1), emb.vk(k - 1)); }
double measure_eps(const Embedding& emb, int k) { return dihedral(emb.vk(k), emb.vk(k + 1), emb.w, emb.u); }

Dihedrals measure_dihedrals(const Embedding& emb) {
  Dihedrals d;
  for (int k = 1; k <= emb.N(); ++k) {
    d.delta.push_back(measure_delta(emb, k));
    d.Delta.push_back(measure_Delta(emb, k));
    d.eps.push_back(measure_eps(emb, k));
  }
  return d;
}

DihedralIdentifier classify_end_bits(const CapGeometry& g, const Embedding& emb, DihedralIdentifier di) {
  const int N = g.N();
  for (int k : {1, N}) {
    const double eps_prev = measure_eps(emb, k - 1);
    const double delta = measure_delta(emb, k);
    QuadraticCoeffs q;
    try {
      q = vertex_quadratic(g.vertex_angles(k), eps_prev);
    } catch (const Error&) {
      continue;
    }
    auto r1 = try_solve_dihedral(q, 1);
    auto r0 = try_solve_dihedral(q, 0);
    const double e1 = r1 ? std::abs(wrap_pi(*r1 - delta)) : std::numeric_limits<double>::infinity();
    const double e0 = r0 ? std::abs(wrap_pi(*r0 - delta)) : std::numeric_limits<double>::infinity();
    di.set_bit(k, e1 < e0);
  }
  return di;
}

Embedding construct(const CapGeometry& g, double eps1, DihedralIdentifier di, double disc_snap) {
  const int N = g.N();
  di.N = N;
  Embedding e = place_initial_faces(g, eps1);
  double eps = eps1;
  for (int k = 2; k <= N - 1; ++k) {
    const QuadraticCoeffs q = vertex_quadratic(g.vertex_angles(k), eps);
    double delta = 0.0;
    try {
      delta = solve_dihedral(q, di.bit(k) ? 1 : 0, disc_snap);
    } catch (const NoRealRoot&) {
      throw NoRealRoot(k, q.discriminant());
    }
    e.vk(k + 1) = place_next_vertex(g, e.u, e.vk(k - 1), e.vk(k), k, delta);
    eps = measure_eps(e, k);
  }
  e.closure_residual = std::abs((e.vk(N) - e.vk(1)).norm() - g.L(N));
  e.di = classify_end_bits(g, e, di);
  return e;
}

std::optional<Embedding> try_construct(const CapGeometry& g, double eps1, DihedralIdentifier di, double disc_snap) {
  try {
    return construct(g, eps1, di, disc_snap);
  } catch (const Error&) {
    return std::nullopt;
  }
}

int symmetric_bit_partner(SubType s, int N, int k) {
  const int M = N / 2;
  if (s == SubType::II_AEE) return N + 1 - k;
  return k <= M ? k + M : k - M;
}

DihedralIdentifier symmetric_di(SubType s, int N, std::uint32_t prefix_bits) {
  if (!is_type12(s)) throw ConstraintViolation("subtype", "symmetric identifiers apply to length-specified sub-types");
  DihedralIdentifier di(0, N);
  for (int k = 1; k <= N / 2; ++k) {
    const bool b = (prefix_bits >> (k - 1)) & 1u;
    di.set_bit(k, b);
    di.set_bit(symmetric_bit_partner(s, N, k), !b);
  }
  return di;
}

Embedding symmetric_completion(const CapGeometry& g, double eps1, std::uint32_t prefix_bits) {
  Embedding e = construct(g, eps1, symmetric_di(g.subtype(), g.N(), prefix_bits));
  return normalize_to_model(e, g.subtype());
}

Embedding normalize_to_model(const Embedding& emb, SubType s) {
  if (!is_type12(s)) throw ConstraintViolation("subtype", "coordinate models exist for length-specified sub-types");
  const int N = emb.N(), M = N / 2;
  // Points: 0 = u, 1 = w, 1 + k = v_k. perm maps each point to its symmetric image.
  std::vector<Vec3> pts{emb.u, emb.w};
  for (const auto& v : emb.v) pts.push_back(v);
  std::vector<int> perm(pts.size());
  const bool swap_apexes = s != SubType::II_OEE;
  perm[0] = swap_apexes ? 1 : 0;
  perm[1] = swap_apexes ? 0 : 1;
  for (int k = 1; k <= N; ++k) {
    int j;
    if (s == SubType::II_AEE)
      j = ((N + 2 - k) - 1) % N + 1;
    else
      j = k <= M ? k + M : k - M;
    perm[static_cast<size_t>(k + 1)] = j + 1;
  }
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Mat3 H = Mat3::Zero();
  for (size_t i = 0; i < pts.size(); ++i) H += (pts[i] - c) * (pts[static_cast<size_t>(perm[i])] - c).transpose();
  Eigen::JacobiSVD<Mat3> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 U = svd.matrixU(), V = svd.matrixV();
  const double want = s == SubType::I_OEE ? 1.0 : -1.0;
  Mat3 D = Mat3::Identity();
  D(2, 2) = want * (V * U.transpose()).determinant() > 0 ? 1.0 : -1.0;
  const Mat3 R = V * D * U.transpose();
  double ss = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    ss += (R * (pts[i] - c) + c - pts[static_cast<size_t>(perm[i])]).squaredNorm();
  const double rms = std::sqrt(ss / static_cast<double>(pts.size()));
  if (rms > 1e-6) throw ModelMismatch(rms);

  Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (R + R.transpose()));
  Vec3 origin, ex, ey, ez;
  if (s == SubType::I_OEE) {
    // Rotation axis has eigenvalue +1, the largest of the symmetric part.
    ey = es.eigenvectors().col(2);
    origin = 0.5 * (emb.u + emb.w);
    ez = unit(reject(emb.u - origin, ey));
    ex = ey.cross(ez);
  } else {
    ez = es.eigenvectors().col(0);  // mirror normal, eigenvalue -1
    if (s == SubType::II_AEE) {
      if ((emb.u - c).dot(ez) < 0.0) ez = -ez;
      origin = emb.vk(1) - (emb.vk(1) - c).dot(ez) * ez;
      ex = unit(reject(emb.vk(M + 1) - emb.vk(1), ez));
    } else {
      if ((emb.vk(1) - c).dot(ez) < 0.0) ez = -ez;
      origin = emb.vk(1) - (emb.vk(1) - c).dot(ez) * ez;
      ex = unit(reject(emb.u - origin, ez));
    }
    ey = ez.cross(ex);
  }
  Mat3 F;
  F.row(0) = ex.transpose();
  F.row(1) = ey.transpose();
  F.row(2) = ez.transpose();
  auto map = [&](const Vec3& p) -> Vec3 { return F * (p - origin); };
  Embedding out = emb;
  out.u = map(emb.u);
  out.w = map(emb.w);
  for (auto& v : out.v) v = map(v);
  out.model_residual = rms;
  return out;
}

double coplanarity(const Embedding& emb) {
  std::vector<Vec3> pts{emb.u, emb.w};
  for (const auto& v : emb.v) pts.push_back(v);
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Eigen::MatrixXd X(pts.size(), 3);
  for (size_t i = 0; i < pts.size(); ++i) X.row(static_cast<Eigen::Index>(i)) = (pts[i] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
  return svd.singularValues()(2) / std::sqrt(static_cast<double>(pts.size()));
}

double max_edge_error(const CapGeometry& g, const Embedding& e) {
  double worst = 0.0;
  for (int k = 1; k <= g.N(); ++k) {
    worst = std::max(worst, std::abs((e.u - e.vk(k)).norm() - g.l(k)));
    worst = std::max(worst, std::abs((e.w - e.vk(k)).norm() - g.m(k)));
    worst = std::max(worst, std::abs((e.vk(k + 1) - e.vk(k)).norm() - g.L(k)));
  }
  return std::isfinite(worst) ? worst : std::numeric_limits<double>::infinity();
}

Embedding flat_folding(const CapGeometry& g, double eps1) {
  if (!is_type3(g.subtype())) throw ConstraintViolation("subtype", "flat foldings apply to third-type suspensions");
  const bool at_zero = std::abs(wrap_pi(eps1)) < 1e-9;
  const bool at_pi = std::abs(wrap_pi(eps1 - kPi)) < 1e-9;
  if (!at_zero && !at_pi) throw OutOfRange("flat foldings occur at eps1 = 0 or pi");
  Embedding e = place_initial_faces(g, at_zero ? 0.0 : kPi);
  const int N = g.N();
  for (int k = 2; k <= N - 1; ++k) {
    const bool turned = g.is_oas(k);
    const double delta = at_zero ? (turned ? 0.0 : kPi) : (turned ? kPi : 0.0);
    e.vk(k + 1) = place_next_vertex(g, e.u, e.vk(k - 1), e.vk(k), k, delta);
  }
  e.closure_residual = max_edge_error(g, e);
  return e;
}

}  // namespace flexspan

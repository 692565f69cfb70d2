#include "flexspan/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "flexspan/errors.hpp"

namespace flexspan {

std::string to_string(SubType s) {
  switch (s) {
    case SubType::I_OEE: return "I-OEE";
    case SubType::II_AEE: return "II-AEE";
    case SubType::II_OEE: return "II-OEE";
    case SubType::III_OAE: return "III-OAE";
    case SubType::III_OAS: return "III-OAS";
  }
  return "?";
}

SubType subtype_from_string(const std::string& s) {
  for (SubType t : {SubType::I_OEE, SubType::II_AEE, SubType::II_OEE, SubType::III_OAE, SubType::III_OAS}) {
    if (to_string(t) == s) return t;
  }
  throw ConstraintViolation("subtype", "unknown sub-type '" + s + "'");
}

namespace {

void require_lengths(const std::vector<double>& v, size_t n, const std::string& name) {
  if (v.size() != n) {
    throw ConstraintViolation(name, "expected " + std::to_string(n) + " values, got " + std::to_string(v.size()));
  }
  for (size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      throw ConstraintViolation(name + "_" + std::to_string(i + 1), "length must be positive");
    }
  }
}

void require_angle(double x, const std::string& name) {
  if (!(x > 0.0 && x < kPi)) throw ConstraintViolation(name, "angle must lie strictly between 0 and 180 degrees");
}

}  // namespace

void ParameterSet::validate() const {
  if (N < 4 || N % 2 != 0) throw ConstraintViolation("N", "must be an even integer >= 4");
  const size_t n = static_cast<size_t>(N), half = static_cast<size_t>(M());
  switch (subtype) {
    case SubType::I_OEE:
    case SubType::II_AEE:
      require_lengths(l, n, "l");
      require_lengths(base, half, "L");
      break;
    case SubType::II_OEE:
      require_lengths(l, half, "l");
      require_lengths(m, half, "m");
      require_lengths(base, half, "L");
      break;
    case SubType::III_OAE:
    case SubType::III_OAS:
      if (!(l1 > 0.0)) throw ConstraintViolation("l1", "length must be positive");
      require_angle(alpha1, "alpha1");
      require_angle(beta1, "beta1");
      require_angle(alpha2, "alpha2");
      require_angle(beta2, "beta2");
      if (odd_alpha.size() != half - 2) {
        throw ConstraintViolation("alpha_odd", "expected " + std::to_string(half - 2) + " odd apical angles");
      }
      for (size_t i = 0; i < odd_alpha.size(); ++i) require_angle(odd_alpha[i], "alpha" + std::to_string(2 * i + 3));
      if (subtype == SubType::III_OAE && (L < 3 || L > std::max(N - 2, 3))) {
        throw ConstraintViolation("L", "OAS vertex index must satisfy 3 <= L <= N-2");
      }
      if (subtype == SubType::III_OAS && K < 1) throw ConstraintViolation("K", "winding number must be >= 1");
      break;
  }
}

CapGeometry::CapGeometry(SubType subtype, int n) : subtype_(subtype), n_(n) {
  for (auto& v : data_) v.assign(static_cast<size_t>(n), kUnset);
}

bool CapGeometry::is_oas(int k) const {
  if (subtype_ != SubType::III_OAE) return false;
  const int i = idx(k) + 1;
  return i == 1 || i == oas_index_;
}

double CapGeometry::scale() const {
  double s = 0.0;
  for (Field f : {kl, km, kL}) {
    for (double x : data_[f]) {
      if (std::isfinite(x)) s = std::max(s, x);
    }
  }
  return s;
}

double CapGeometry::face_residual() const {
  double r = 0.0;
  for (int k = 1; k <= n_; ++k) {
    r = std::max(r, std::abs(alpha(k) + beta(k) + gamma(k) - kPi));
    r = std::max(r, std::abs(A(k) + B(k) + Gamma(k) - kPi));
    const double su = L(k) / std::sin(alpha(k));
    r = std::max(r, std::abs(l(k + 1) / std::sin(beta(k)) - su) / su);
    r = std::max(r, std::abs(l(k) / std::sin(gamma(k)) - su) / su);
    const double sw = L(k) / std::sin(A(k));
    r = std::max(r, std::abs(m(k + 1) / std::sin(B(k)) - sw) / sw);
    r = std::max(r, std::abs(m(k) / std::sin(Gamma(k)) - sw) / sw);
  }
  return r;
}

double CapGeometry::angle_distance(const CapGeometry& other) const {
  double d = 0.0;
  for (Field f : {kalpha, kbeta, kgamma, kA, kB, kGamma}) {
    for (size_t i = 0; i < data_[f].size(); ++i) d = std::max(d, std::abs(data_[f][i] - other.data_[f][i]));
  }
  return d;
}

}  // namespace flexspan

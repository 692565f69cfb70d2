#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "flexspan/kinematics.hpp"

namespace flexspan {

enum class SubType { I_OEE, II_AEE, II_OEE, III_OAE, III_OAS };

std::string to_string(SubType s);
SubType subtype_from_string(const std::string& s);
inline bool is_type12(SubType s) {
  return s == SubType::I_OEE || s == SubType::II_AEE || s == SubType::II_OEE;
}
inline bool is_type3(SubType s) { return s == SubType::III_OAE || s == SubType::III_OAS; }

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

// Independent parameters of one suspension. Lengths are in model units,
// angles in radians.
struct ParameterSet {
  SubType subtype = SubType::I_OEE;
  int N = 4;
  int L = 0;  // III-OAE: index of the second OAS base vertex
  int K = 0;  // III-OAS: winding number

  // I-OEE, II-AEE: l_1..l_N and L_1..L_M. II-OEE: l_1..l_M, m_1..m_M, L_1..L_M.
  std::vector<double> l;
  std::vector<double> m;
  std::vector<double> base;

  // III-*: seed faces and the odd apical angles α_3, α_5, ..., α_{N-3}.
  double l1 = 0.0;
  double alpha1 = 0.0;
  double beta1 = 0.0;
  double alpha2 = 0.0;
  double beta2 = 0.0;
  std::vector<double> odd_alpha;

  int M() const { return N / 2; }
  // Throws ConstraintViolation naming the offending field.
  void validate() const;
  bool operator==(const ParameterSet&) const = default;
};

// All edge lengths and face angles of both caps. Accessors take 1-based cyclic
// indices: l(k) = |u v_k|, m(k) = |w v_k|, L(k) = |v_k v_{k+1}|; face
// f_k = (u, v_k, v_{k+1}) has angles alpha(k) at u, beta(k) at v_k, gamma(k) at
// v_{k+1}; face F_k = (w, v_k, v_{k+1}) has A(k), B(k), Gamma(k).
class CapGeometry {
 public:
  enum Field { kl, km, kL, kalpha, kbeta, kgamma, kA, kB, kGamma, kFieldCount };

  CapGeometry() = default;
  CapGeometry(SubType subtype, int n);

  SubType subtype() const { return subtype_; }
  int N() const { return n_; }
  int M() const { return n_ / 2; }
  int oas_index() const { return oas_index_; }
  int winding() const { return winding_; }
  void set_oas_index(int L) { oas_index_ = L; }
  void set_winding(int K) { winding_ = K; }

  // True if base vertex v_k has supplementary opposite face angles.
  bool is_oas(int k) const;

  double& at(Field f, int k) { return data_[f][static_cast<size_t>(idx(k))]; }
  double at(Field f, int k) const { return data_[f][static_cast<size_t>(idx(k))]; }

  double& l(int k) { return at(kl, k); }
  double l(int k) const { return at(kl, k); }
  double& m(int k) { return at(km, k); }
  double m(int k) const { return at(km, k); }
  double& L(int k) { return at(kL, k); }
  double L(int k) const { return at(kL, k); }
  double& alpha(int k) { return at(kalpha, k); }
  double alpha(int k) const { return at(kalpha, k); }
  double& beta(int k) { return at(kbeta, k); }
  double beta(int k) const { return at(kbeta, k); }
  double& gamma(int k) { return at(kgamma, k); }
  double gamma(int k) const { return at(kgamma, k); }
  double& A(int k) { return at(kA, k); }
  double A(int k) const { return at(kA, k); }
  double& B(int k) { return at(kB, k); }
  double B(int k) const { return at(kB, k); }
  double& Gamma(int k) { return at(kGamma, k); }
  double Gamma(int k) const { return at(kGamma, k); }

  VertexAngles vertex_angles(int k) const { return {beta(k), gamma(k - 1), Gamma(k - 1), B(k)}; }

  // Largest edge length.
  double scale() const;

  // Max over faces of |angle sum - π| and relative law-of-sines mismatch.
  double face_residual() const;

  // Max |angle difference| over all angle fields (radians).
  double angle_distance(const CapGeometry& other) const;

 private:
  int idx(int k) const { return ((k - 1) % n_ + n_) % n_; }

  SubType subtype_ = SubType::I_OEE;
  int n_ = 0;
  int oas_index_ = 0;
  int winding_ = 0;
  std::array<std::vector<double>, kFieldCount> data_;
};

// Opposite-face-angle map at a base vertex: equal for OAE, supplementary for OAS.
inline double opposite_angle(bool oas, double x) { return oas ? kPi - x : x; }

}  // namespace flexspan

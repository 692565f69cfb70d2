#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace flexspan {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double to_rad(double deg) { return deg * kPi / 180.0; }
inline double to_deg(double rad) { return rad * 180.0 / kPi; }

// Maps into [0, 2π).
inline double wrap_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

// Maps into (-π, π].
inline double wrap_pi(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

// z-axis rotation, the A(α) matrix of the cap equations.
Mat3 rot_z(double alpha);
// x-axis rotation, the Φ(δ) matrix of the cap equations.
Mat3 rot_x(double delta);
// Right-handed rotation about a unit axis.
Mat3 rot_axis(const Vec3& axis, double angle);
Vec3 rotate(const Vec3& v, const Vec3& axis, double angle);

inline double t_h(double x) { return std::tan(0.5 * x); }
inline double c_h(double x) { return 1.0 / std::tan(0.5 * x); }
inline double b1(double beta, double B) {
  return std::sin(0.5 * (beta - B)) / std::sin(0.5 * (beta + B));
}
inline double b2(double beta, double B) {
  return std::cos(0.5 * (beta - B)) / std::cos(0.5 * (beta + B));
}

// Component of v orthogonal to the unit vector e.
inline Vec3 reject(const Vec3& v, const Vec3& e) { return v - v.dot(e) * e; }

// Dihedral angle in [0, 2π) on the edge O->X between the half-planes through P and Q.
// Measured as the right-handed turn about (X - O) that carries the P side onto the Q side.
double dihedral(const Vec3& O, const Vec3& X, const Vec3& P, const Vec3& Q);

// Time derivative of dihedral() given the point velocities.
double dihedral_rate(const Vec3& O, const Vec3& X, const Vec3& P, const Vec3& Q,
                     const Vec3& dO, const Vec3& dX, const Vec3& dP, const Vec3& dQ);

// Interior angle at vertex V of the triangle (V, P, Q).
double corner_angle(const Vec3& V, const Vec3& P, const Vec3& Q);

}  // namespace flexspan

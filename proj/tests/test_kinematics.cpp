#include <doctest.h>

#include <random>

#include "flexspan/errors.hpp"
#include "flexspan/kinematics.hpp"
#include "support.hpp"

using namespace flexspan;

namespace {

double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

}  // namespace

TEST_SUITE("kinematics") {
  TEST_CASE("vertex quadratic roots satisfy the vertex equation") {
    const CapGeometry g = expand_type12(fixture("II-OEE#7").params);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> eps(0.0, kTwoPi);
    int solved = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const int k = 2 + trial % (g.N() - 2);
      const VertexAngles va = g.vertex_angles(k);
      const double e = eps(rng);
      const QuadraticCoeffs q = vertex_quadratic(va, e);
      for (int branch : {0, 1}) {
        if (auto d = try_solve_dihedral(q, branch)) {
          CHECK(std::abs(vertex_residual(va, *d, e)) < 1e-12);
          ++solved;
        }
      }
    }
    CHECK(solved > 100);
  }

  TEST_CASE("vertex partials match central differences") {
    const CapGeometry g = expand_type12(fixture("I-OEE#4").params);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    const double h = 1e-5;
    for (int trial = 0; trial < 10; ++trial) {
      const VertexAngles va = g.vertex_angles(2 + trial % (g.N() - 2));
      const double d = ang(rng), e = ang(rng);
      const C5Partials p = vertex_partials(va, d, e);
      const double fd_d = (vertex_residual(va, d + h, e) - vertex_residual(va, d - h, e)) / (2 * h);
      const double fd_e = (vertex_residual(va, d, e + h) - vertex_residual(va, d, e - h)) / (2 * h);
      CHECK(std::abs(p.d_delta - fd_d) < 1e-8);
      CHECK(std::abs(p.d_eps - fd_e) < 1e-8);
    }
  }

  TEST_CASE("vertex star reproduces the four face angles") {
    const CapGeometry g = expand_type12(fixture("II-AEE#3").params);
    for (int k = 2; k < g.N(); ++k) {
      const VertexAngles va = g.vertex_angles(k);
      const double e = 1.1;
      const auto d = try_solve_dihedral(vertex_quadratic(va, e), 1);
      if (!d) continue;
      const VertexStar s = vertex_star(va, *d, e);
      CHECK(angle_between(s.to_next, s.to_u) == doctest::Approx(va.beta).epsilon(1e-12));
      CHECK(angle_between(s.to_u, s.to_prev) == doctest::Approx(va.gamma_prev).epsilon(1e-12));
      CHECK(angle_between(s.to_prev, s.to_w) == doctest::Approx(va.Gamma_prev).epsilon(1e-12));
      CHECK(angle_between(s.to_w, s.to_next) == doctest::Approx(va.B).epsilon(1e-9));
    }
  }

  TEST_CASE("quadratic failure modes") {
    CHECK_THROWS_AS(solve_dihedral(QuadraticCoeffs{1.0, 0.0, 1.0}, 1), NoRealRoot);
    CHECK_THROWS_AS(solve_dihedral(QuadraticCoeffs{0.0, 0.0, 1.0}, 1), DegenerateQuadratic);
    CHECK_FALSE(try_solve_dihedral(QuadraticCoeffs{1.0, 0.0, 1.0}, 0).has_value());
    // Linear case: a = 0 leaves the single root t = -c/b.
    CHECK(solve_dihedral(QuadraticCoeffs{0.0, 2.0, -2.0}, 0) == doctest::Approx(kPi / 2));
  }

  TEST_CASE("discriminant snap resolves a double root exactly") {
    const QuadraticCoeffs q{1.0, -2.0, 1.0 - 1e-13};
    CHECK_FALSE(try_solve_dihedral(q, 1, 0.0) == try_solve_dihedral(q, 0, 0.0));
    CHECK(solve_dihedral(q, 1, 1e-10) == solve_dihedral(q, 0, 1e-10));
    CHECK(solve_dihedral(q, 1, 1e-10) == doctest::Approx(kPi / 2));
  }

  TEST_CASE("wrapping helpers") {
    CHECK(wrap_two_pi(-0.5) == doctest::Approx(kTwoPi - 0.5));
    CHECK(wrap_two_pi(kTwoPi) == 0.0);
    CHECK(wrap_pi(kPi + 0.25) == doctest::Approx(-kPi + 0.25));
    CHECK(wrap_pi(-kPi) == doctest::Approx(kPi));
  }
}

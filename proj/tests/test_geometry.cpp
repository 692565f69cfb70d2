#include <doctest.h>

#include "flexspan/errors.hpp"
#include "support.hpp"

using namespace flexspan;

TEST_SUITE("geometry") {
  TEST_CASE("sub-type names round-trip") {
    for (SubType s : {SubType::I_OEE, SubType::II_AEE, SubType::II_OEE, SubType::III_OAE, SubType::III_OAS})
      CHECK(subtype_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(subtype_from_string("IV-XYZ"), ConstraintViolation);
  }

  TEST_CASE("parameter validation names the offending field") {
    ParameterSet p = fixture("I-OEE#1").params;
    p.N = 5;
    try {
      p.validate();
      FAIL("odd N accepted");
    } catch (const ConstraintViolation& e) {
      CHECK(e.field() == "N");
    }
    ParameterSet q = fixture("III-OAE#2").params;
    q.alpha2 = 0.0;
    try {
      q.validate();
      FAIL("zero angle accepted");
    } catch (const ConstraintViolation& e) {
      CHECK(e.field() == "alpha2");
    }
    ParameterSet r = fixture("II-OEE#1").params;
    r.m.pop_back();
    CHECK_THROWS_AS(r.validate(), ConstraintViolation);
  }

  TEST_CASE("expanded length-specified geometries have consistent faces") {
    for (SubType s : {SubType::I_OEE, SubType::II_AEE, SubType::II_OEE}) {
      for (const Fixture& f : fixtures_of(s)) {
        CAPTURE(f.id);
        const CapGeometry g = expand_type12(f.params);
        CHECK(g.N() == f.params.N);
        CHECK(g.face_residual() < 1e-12);
        for (int k = 1; k <= g.N(); ++k) {
          CHECK(g.alpha(k) + g.beta(k) + g.gamma(k) == doctest::Approx(kPi).epsilon(1e-12));
          CHECK(g.A(k) + g.B(k) + g.Gamma(k) == doctest::Approx(kPi).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("cyclic accessors") {
    const CapGeometry g = expand_type12(fixture("I-OEE#1").params);
    CHECK(g.L(0) == g.L(g.N()));
    CHECK(g.l(g.N() + 1) == g.l(1));
    CHECK(g.angle_distance(g) == 0.0);
    CHECK(g.scale() > 0.0);
  }

  TEST_CASE("fixture catalog") {
    CHECK(fixtures_of(SubType::I_OEE).size() == 7);
    CHECK(fixtures_of(SubType::II_AEE).size() == 7);
    CHECK(fixtures_of(SubType::II_OEE).size() == 7);
    CHECK(fixtures_of(SubType::III_OAE).size() == 8);
    CHECK(fixtures_of(SubType::III_OAS).size() == 7);
    CHECK(fixture("III-OAE#8").di == 3697);
    CHECK(fixture("II-OEE#7").di == 41055);
    CHECK_THROWS_AS(fixture("III-OAE#99"), std::out_of_range);
    for (const Fixture& f : fixture_catalog()) CHECK_NOTHROW(f.params.validate());
  }
}

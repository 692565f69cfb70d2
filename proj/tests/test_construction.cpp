#include <doctest.h>

#include "flexspan/errors.hpp"
#include "support.hpp"

using namespace flexspan;
using flexspan::testing::reference_geometry;

namespace {

Embedding regular_octahedron() {
  Embedding e;
  e.u = Vec3(0, 0, 1);
  e.w = Vec3(0, 0, -1);
  e.v = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(-1, 0, 0), Vec3(0, -1, 0)};
  return e;
}

}  // namespace

TEST_SUITE("construction") {
  TEST_CASE("identifier parsing and formatting") {
    CHECK(parse_di_value("41055") == 41055u);
    CHECK(parse_di_value("0xA05F") == 41055u);
    CHECK(parse_di_value("A05Fh") == 41055u);
    CHECK(parse_di_value("0xa05f") == 41055u);
    CHECK_THROWS(parse_di_value("zz"));
    const DihedralIdentifier di(41055, 16);
    CHECK(di.hex() == "0xA05F");
    CHECK(di.mirror().value == (0xFFFFu & ~41055u));
    CHECK(di.mirror().mirror() == di);
    CHECK(di.bit(1));
    CHECK_FALSE(di.bit(6));
    DihedralIdentifier d(0, 6);
    d.set_bit(3, true);
    CHECK(d.value == 4u);
  }

  TEST_CASE("regular octahedron dihedrals") {
    const Dihedrals d = measure_dihedrals(regular_octahedron());
    const double interior = std::acos(-1.0 / 3.0);
    for (int k = 0; k < 4; ++k) {
      CHECK(d.delta[k] == doctest::Approx(interior).epsilon(1e-12));
      CHECK(d.Delta[k] == doctest::Approx(interior).epsilon(1e-12));
      CHECK(d.eps[k] == doctest::Approx(interior).epsilon(1e-12));
    }
  }

  TEST_CASE("initial faces carry eps1") {
    const CapGeometry g = expand_type12(fixture("I-OEE#3").params);
    for (double e : {0.3, 1.7, 4.0}) {
      const Embedding emb = place_initial_faces(g, e);
      CHECK(measure_eps(emb, 1) == doctest::Approx(e).epsilon(1e-12));
      CHECK((emb.vk(1) - emb.u).norm() == doctest::Approx(g.l(1)));
      CHECK((emb.vk(1) - emb.w).norm() == doctest::Approx(g.m(1)));
    }
  }

  TEST_CASE("reference foldings close with exact edge lengths") {
    for (const Fixture& f : fixture_catalog()) {
      if (!f.di) continue;
      CAPTURE(f.id);
      const auto g = reference_geometry(f);
      REQUIRE(g);
      const auto e = testing::closed_embedding(*g, DihedralIdentifier(f.di, g->N()), to_rad(f.eps1_deg));
      REQUIRE(e);
      CHECK(max_edge_error(*g, *e) < 1e-9 * g->scale());
      CHECK(e->closure_residual < 1e-9 * g->scale());
    }
  }

  TEST_CASE("end bits are classified from the closed embedding") {
    const CapGeometry g = expand_type12(fixture("II-OEE#7").params);
    const Embedding e = construct(g, to_rad(75.0), DihedralIdentifier(41055, g.N()));
    CHECK(e.di.value == 41055u);
    DihedralIdentifier flipped(41055, g.N());
    flipped.set_bit(1, false);
    flipped.set_bit(g.N(), true);
    CHECK(construct(g, to_rad(75.0), flipped).di.value == 41055u);
  }

  TEST_CASE("symmetric identifiers complement partner bits") {
    const DihedralIdentifier a = symmetric_di(SubType::I_OEE, 8, 0b1011);
    for (int k = 1; k <= 4; ++k) CHECK(a.bit(k) != a.bit(k + 4));
    const DihedralIdentifier b = symmetric_di(SubType::II_AEE, 8, 0b0110);
    for (int k = 1; k <= 4; ++k) CHECK(b.bit(k) != b.bit(9 - k));
    CHECK(symmetric_bit_partner(SubType::II_OEE, 10, 7) == 2);
    CHECK_THROWS_AS(symmetric_di(SubType::III_OAE, 8, 1), ConstraintViolation);
  }

  TEST_CASE("symmetric completions fit the coordinate model") {
    for (SubType s : {SubType::I_OEE, SubType::II_AEE, SubType::II_OEE}) {
      for (const Fixture& f : fixtures_of(s)) {
        CAPTURE(f.id);
        const CapGeometry g = expand_type12(f.params);
        const auto folds = enumerate_foldings(g);
        REQUIRE_FALSE(folds.empty());
        const Folding& fold = folds.front();
        const auto& iv = fold.range.intervals.front();
        const double mid = iv.lo + 0.37 * (iv.hi - iv.lo);
        const auto e = testing::closed_embedding(g, fold.di, mid);
        REQUIRE(e);
        const Embedding m = normalize_to_model(*e, s);
        CHECK(m.model_residual < 1e-9);
        CHECK(max_edge_error(g, m) < 1e-9 * g.scale());
        if (s == SubType::I_OEE) {
          CHECK(std::abs(m.u.x()) < 1e-9);
          CHECK(std::abs(m.w.x()) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("third-type partners") {
    CHECK(third_type_partner(8, 3) == 1);
    CHECK(third_type_partner(8, 8) == 6);
    CHECK(third_type_partner(8, 5) == 2);
    CHECK(third_type_partner(8, 7) == 4);
    CHECK(third_type_partner(8, 4) == 0);
  }

  TEST_CASE("flat foldings of third-type fixtures are planar") {
    for (SubType s : {SubType::III_OAE, SubType::III_OAS}) {
      for (const Fixture& f : fixtures_of(s)) {
        CAPTURE(f.id);
        const auto g = reference_geometry(f);
        REQUIRE(g);
        for (double e1 : {0.0, kPi}) {
          const Embedding e = flat_folding(*g, e1);
          CHECK(coplanarity(e) < 1e-8);
          CHECK(e.closure_residual < 1e-8 * g->scale());
        }
      }
    }
  }

  TEST_CASE("construction outside the range reports the failing vertex") {
    const CapGeometry g = expand_type12(fixture("II-OEE#1").params);
    try {
      const Embedding e = construct(g, to_rad(10.0), DihedralIdentifier(3, g.N()));
      CHECK_FALSE(closes(g, e));
    } catch (const NoRealRoot& err) {
      CHECK(err.vertex() >= 2);
      CHECK(err.vertex() < g.N());
    }
  }
}

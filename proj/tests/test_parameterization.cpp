#include <doctest.h>

#include "flexspan/errors.hpp"
#include "support.hpp"

using namespace flexspan;
using flexspan::testing::matches_reference;

namespace {

std::vector<double> apical_angles(const CapGeometry& g) {
  std::vector<double> a;
  for (int k = 1; k <= g.N(); ++k) a.push_back(g.alpha(k));
  return a;
}

}  // namespace

TEST_SUITE("parameterization") {
  TEST_CASE("third-type completions reproduce the reference angles") {
    for (SubType s : {SubType::III_OAE, SubType::III_OAS}) {
      for (const Fixture& f : fixtures_of(s)) {
        CAPTURE(f.id);
        const auto cs = complete_suspension(f.params);
        int matched = 0;
        for (const auto& g : cs) {
          CHECK(g.face_residual() < 1e-9);
          CHECK(check_folding_constraints(g).max() < 1e-9);
          CHECK(opposite_angle_residual(g) < 1e-9);
          if (s == SubType::III_OAE) CHECK(apical_angle_crosscheck(g) < 1e-9);
          if (matches_reference(g, f)) ++matched;
        }
        CHECK(matched == 1);
      }
    }
  }

  TEST_CASE("completions are distinct") {
    const auto cs = complete_suspension(fixture("III-OAE#4").params);
    for (size_t i = 0; i < cs.size(); ++i)
      for (size_t j = i + 1; j < cs.size(); ++j) CHECK(to_deg(cs[i].angle_distance(cs[j])) > 1e-7);
  }

  TEST_CASE("octahedral closing routes agree") {
    for (const char* id : {"III-OAE#1", "III-OAS#1"}) {
      CAPTURE(id);
      const ParameterSet& p = fixture(id).params;
      const auto a = complete_suspension(p);
      const auto b = complete_octahedron(p);
      REQUIRE(a.size() == b.size());
      for (const auto& x : a) {
        double best = 1e9;
        for (const auto& y : b) best = std::min(best, to_deg(x.angle_distance(y)));
        CHECK(best < 1e-9);
      }
    }
  }

  TEST_CASE("signed and reduced folding equations agree on completions") {
    for (const char* id : {"III-OAE#3", "III-OAE#6", "III-OAS#2", "III-OAS#5"}) {
      CAPTURE(id);
      const Fixture& f = fixture(id);
      for (const auto& g : complete_suspension(f.params)) {
        const auto a = apical_angles(g);
        const auto [s1, s2] = folding_residual_signed(g.subtype(), g.oas_index(), g.winding(), a);
        const auto [r1, r2] = folding_residual_reduced(g.subtype(), g.oas_index(), g.winding(), a);
        CHECK(std::abs(s1) < 1e-9);
        CHECK(std::abs(s2) < 1e-9);
        CHECK(std::abs(r1) < 1e-9);
        CHECK(std::abs(r2) < 1e-9);
      }
    }
  }

  TEST_CASE("seed stage resolves only the seeded faces") {
    const ParameterSet& p = fixture("III-OAE#5").params;
    const CapGeometry seed = seed_faces(p);
    CHECK(seed.alpha(1) == p.alpha1);
    CHECK(seed.beta(2) == p.beta2);
    CHECK(std::isnan(seed.beta(5)));
    for (const auto& g : solve_seed_stage(p)) {
      CHECK(std::isfinite(g.beta(3)));
      CHECK(std::isfinite(g.B(3)));
      CHECK(std::isnan(g.beta(7)));
    }
  }

  TEST_CASE("partial filter is vacuous before any pair resolves") {
    const ParameterSet& p = fixture("III-OAE#5").params;
    for (const auto& g : solve_seed_stage(p)) CHECK(partial_construction_filter(g, 2));
  }

  TEST_CASE("unfiltered search keeps every filtered completion") {
    const ParameterSet& p = fixture("III-OAE#4").params;
    CompletionOptions raw;
    raw.use_filter = false;
    const auto all = complete_suspension(p, raw);
    const auto kept = complete_suspension(p);
    CHECK(all.size() >= kept.size());
    for (const auto& g : kept) {
      bool found = false;
      for (const auto& h : all) found = found || to_deg(g.angle_distance(h)) < 1e-7;
      CHECK(found);
    }
  }
}

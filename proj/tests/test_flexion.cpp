#include <doctest.h>

#include <random>

#include "flexspan/errors.hpp"
#include "support.hpp"

using namespace flexspan;
using flexspan::testing::closed_embedding;
using flexspan::testing::reference_geometry;

namespace {

FlexionRange range_of(const char* id, std::uint32_t di) {
  const CapGeometry g = expand_type12(fixture(id).params);
  return find_flexion_range(g, DihedralIdentifier(di, g.N()));
}

FlexState constant_state(int N, double value) {
  FlexState s;
  s.raw.delta.assign(static_cast<size_t>(N), value);
  s.raw.Delta.assign(static_cast<size_t>(N), value);
  s.raw.eps.assign(static_cast<size_t>(N), value);
  s.adjusted = s.raw;
  return s;
}

}  // namespace

TEST_SUITE("flexion") {
  TEST_CASE("analytic rates match central differences") {
    const CapGeometry g = expand_type12(fixture("II-OEE#7").params);
    const DihedralIdentifier di(41055, g.N());
    const FlexionRange r = find_flexion_range(g, di);
    std::mt19937 rng(3);
    for (int i = 0; i < 10; ++i) {
      const auto& iv = r.intervals[static_cast<size_t>(i) % r.intervals.size()];
      std::uniform_real_distribution<double> pick(iv.lo + 0.05, iv.hi - 0.05);
      const auto e = closed_embedding(g, di, pick(rng));
      REQUIRE(e);
      CHECK(testing::derivative_fd_error(g, *e) < 1e-5);
    }
  }

  TEST_CASE("flexible states have a vanishing closing rate") {
    const CapGeometry g = expand_type12(fixture("I-OEE#3").params);
    const auto folds = enumerate_foldings(g);
    REQUIRE_FALSE(folds.empty());
    const auto& iv = folds.front().range.intervals.front();
    const auto e = closed_embedding(g, folds.front().di, iv.lo + 0.37 * (iv.hi - iv.lo));
    REQUIRE(e);
    const FlexState s = derivative_state(g, *e);
    CHECK(is_flexible_state(g, s));
    CHECK(std::abs(s.closing_rate) < 1e-9 * g.L(g.N()) * g.L(g.N()));
  }

  TEST_CASE("range forms") {
    CHECK(range_of("I-OEE#2", 7).form == RangeForm::FullCircle);
    CHECK(range_of("I-OEE#5", 63).form == RangeForm::Wrapped);
    CHECK(range_of("I-OEE#4", 31).form == RangeForm::TwoIntervals);
    const FlexionRange single = range_of("II-OEE#1", 3);
    REQUIRE(single.form == RangeForm::SingleInterval);
    REQUIRE(single.intervals.size() == 1);
    // The range is symmetric about π.
    CHECK(single.intervals[0].lo + single.intervals[0].hi == doctest::Approx(kTwoPi).epsilon(1e-6));
    CHECK(single.contains(kPi));
    CHECK_FALSE(single.contains(to_rad(10.0)));
    CHECK(to_string(RangeForm::Wrapped) == "wrapped");
  }

  TEST_CASE("admissibility follows the range") {
    const CapGeometry g = expand_type12(fixture("II-OEE#1").params);
    const DihedralIdentifier di(3, g.N());
    CHECK(admissible(g, to_rad(90.0), di));
    CHECK(admissible(g, to_rad(270.0), di));
    CHECK_FALSE(admissible(g, to_rad(10.0), di));
  }

  TEST_CASE("rigid identifiers are rejected") {
    const CapGeometry g = expand_type12(fixture("I-OEE#4").params);
    const auto folds = enumerate_foldings(g);
    std::vector<std::uint32_t> flexible;
    for (const auto& f : folds) flexible.push_back(f.di.value);
    int rejected = 0;
    for (std::uint32_t v = 0; v < (1u << g.N()) && rejected < 3; v += 37) {
      const DihedralIdentifier di(v, g.N());
      bool known = false;
      for (auto x : flexible) known = known || x == di.value || x == di.mirror().value;
      if (known) continue;
      try {
        find_flexion_range(g, di);
      } catch (const NotFlexible&) {
        ++rejected;
      }
    }
    CHECK(rejected == 3);
  }

  TEST_CASE("folding counts of length-specified fixtures") {
    CHECK(enumerate_foldings(expand_type12(fixture("I-OEE#4").params)).size() == 16);
    const CapGeometry g = expand_type12(fixture("I-OEE#2").params);
    EnumerateOptions ex;
    ex.exhaustive = true;
    const auto sym = enumerate_foldings(g);
    const auto all = enumerate_foldings(g, ex);
    CHECK(all.size() >= sym.size());
    for (const auto& f : sym) {
      bool found = false;
      for (const auto& h : all)
        found = found || h.di.construction_bits() == f.di.construction_bits() ||
                h.di.construction_bits() == f.di.mirror().construction_bits();
      CHECK(found);
    }
  }

  TEST_CASE("third-type candidates contain the reference identifier") {
    for (const char* id : {"III-OAE#2", "III-OAE#4", "III-OAS#3"}) {
      CAPTURE(id);
      const Fixture& f = fixture(id);
      const auto g = reference_geometry(f);
      REQUIRE(g);
      const DihedralIdentifier ref(f.di, g->N());
      bool found = false;
      for (const auto& c : third_type_candidates(*g)) {
        found = found || c.construction_bits() == ref.construction_bits() ||
                c.construction_bits() == ref.mirror().construction_bits();
      }
      CHECK(found);
    }
  }

  TEST_CASE("continuity adjustment") {
    std::vector<FlexState> flat(5, constant_state(4, 1.0));
    continuity_adjust(flat);
    for (const auto& s : flat) CHECK(s.adjusted.delta == s.raw.delta);

    std::vector<FlexState> trace;
    for (int i = 0; i < 8; ++i) {
      FlexState s = constant_state(4, 1.0);
      s.raw.delta[0] = wrap_two_pi(kTwoPi - 0.3 + 0.1 * i);
      trace.push_back(s);
    }
    std::vector<AliasWarning> warnings;
    continuity_adjust(trace, &warnings);
    for (size_t i = 1; i < trace.size(); ++i)
      CHECK(trace[i].adjusted.delta[0] - trace[i - 1].adjusted.delta[0] == doctest::Approx(0.1));
    CHECK(warnings.empty());
  }

  TEST_CASE("sampled traces are continuous") {
    const CapGeometry g = expand_type12(fixture("II-OEE#7").params);
    const DihedralIdentifier di(41055, g.N());
    const FlexionRange r = find_flexion_range(g, di);
    for (const auto& iv : r.intervals) {
      const auto trace = sample_trace(g, di, iv, 1.0, true);
      REQUIRE(trace.size() > 2);
      for (size_t i = 1; i < trace.size(); ++i)
        for (size_t k = 0; k < trace[i].adjusted.delta.size(); ++k)
          CHECK(std::abs(trace[i].adjusted.delta[k] - trace[i - 1].adjusted.delta[k]) < 0.5 * kPi);
    }
  }
}

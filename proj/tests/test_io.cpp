#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "flexspan/errors.hpp"
#include "flexspan/io.hpp"
#include "support.hpp"

using namespace flexspan;
using flexspan::testing::reference_geometry;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("flexspan_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

size_t count_fields(const std::string& line) { return static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("every catalog entry round-trips through the text format") {
    for (const Fixture& f : fixture_catalog()) {
      CAPTURE(f.id);
      const std::string text = serialize_params(f.params);
      CHECK(parse_params_string(text) == f.params);
    }
  }

  TEST_CASE("third-type file parses to the expected seed") {
    const ParameterSet p = parse_params_string(
        "# seed faces\n"
        "subtype = III-OAE\nN = 4\nL = 3\nl1 = 10\n"
        "alpha1 = 45\nbeta1 = 55\nalpha2 = 30\nbeta2 = 20\n");
    CHECK(p.subtype == SubType::III_OAE);
    CHECK(p.N == 4);
    CHECK(p.L == 3);
    CHECK(p.l1 == 10.0);
    CHECK(p.alpha1 == to_rad(45.0));
    CHECK(p == fixture("III-OAE#1").params);
  }

  TEST_CASE("shortest degree strings") {
    CHECK(format_degrees(to_rad(45.0)) == "45");
    CHECK(format_degrees(to_rad(45.12345)) == "45.12345");
    for (double x : {0.1, 1.0, 2.5, 3.0, 1e-3}) {
      const std::string s = format_degrees(x);
      CHECK(to_rad(std::stod(s)) == x);
    }
  }

  TEST_CASE("parse errors carry the line number") {
    try {
      parse_params_string("subtype = I-OEE\nN = four\n");
      FAIL("bad integer accepted");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    try {
      parse_params_string("subtype = III-OAS\nN = 4\nK = 1\nl1 = 1\nalpha1 = 10\nbeta1 = 20\nalpha2 = 30\nbeta2 = 40\ncolor = red\n");
      FAIL("unknown key accepted");
    } catch (const ParseError& e) {
      CHECK(e.line() == 9);
    }
    try {
      parse_params_string("subtype = I-OEE\nN = 4\nl = 1, 2, 3, 4\nbase = 1, x\n");
      FAIL("bad list accepted");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(parse_params_string("just text\n"), ParseError);
  }

  TEST_CASE("constraint violations name the field") {
    try {
      parse_params_string("subtype = III-OAE\nN = 6\nL = 3\nl1 = 10\nalpha1 = 45\nbeta1 = 55\nbeta2 = 20\nalpha_odd = 25\n");
      FAIL("missing angle accepted");
    } catch (const ConstraintViolation& e) {
      CHECK(e.field() == "alpha2");
    }
    try {
      parse_params_string("subtype = I-OEE\nN = 5\nl = 1, 2, 3, 4, 5\nbase = 1, 2\n");
      FAIL("odd N accepted");
    } catch (const ConstraintViolation& e) {
      CHECK(e.field() == "N");
    }
  }

  TEST_CASE("mesh structure and edge lengths survive export") {
    for (const char* id : {"I-OEE#3", "II-AEE#2", "II-OEE#7", "III-OAE#4", "III-OAS#2"}) {
      CAPTURE(id);
      const Fixture& f = fixture(id);
      const auto g = reference_geometry(f);
      REQUIRE(g);
      const auto folds = enumerate_foldings(*g);
      REQUIRE_FALSE(folds.empty());
      const auto& iv = folds.front().range.intervals.front();
      const Embedding e = frame_embedding(*g, folds.front().di, 0.5 * (iv.lo + iv.hi));
      const Mesh m = mesh_of(e);
      CHECK(m.vertices.size() == static_cast<size_t>(g->N() + 2));
      CHECK(m.faces.size() == static_cast<size_t>(2 * g->N()));
      std::stringstream obj;
      write_obj(obj, m, "test");
      const Mesh back = read_obj(obj);
      REQUIRE(back.vertices.size() == m.vertices.size());
      REQUIRE(back.faces == m.faces);
      const int N = g->N();
      auto len = [&](int a, int b) { return (back.vertices[static_cast<size_t>(a)] - back.vertices[static_cast<size_t>(b)]).norm(); };
      for (int k = 1; k <= N; ++k) {
        const int vk = 2 + k - 1, vn = 2 + k % N;
        CHECK(std::abs(len(0, vk) - g->l(k)) < 1e-6 * g->l(k));
        CHECK(std::abs(len(1, vk) - g->m(k)) < 1e-6 * g->m(k));
        CHECK(std::abs(len(vk, vn) - g->L(k)) < 1e-6 * g->L(k));
      }
    }
  }

  TEST_CASE("faces are consistently oriented") {
    const CapGeometry g = expand_type12(fixture("II-OEE#3").params);
    const auto folds = enumerate_foldings(g);
    REQUIRE_FALSE(folds.empty());
    const auto& iv = folds.front().range.intervals.front();
    const Mesh m = mesh_of(frame_embedding(g, folds.front().di, 0.5 * (iv.lo + iv.hi)));
    // Every directed edge appears once, its reverse once.
    std::map<std::pair<int, int>, int> directed;
    for (const auto& f : m.faces)
      for (int i = 0; i < 3; ++i) ++directed[{f[static_cast<size_t>(i)], f[static_cast<size_t>((i + 1) % 3)]}];
    for (const auto& [edge, n] : directed) {
      CHECK(n == 1);
      CHECK(directed.count({edge.second, edge.first}) == 1);
    }
  }

  TEST_CASE("frame export writes meshes and a trace") {
    const Fixture& f = fixture("III-OAS#3");
    const auto g = reference_geometry(f);
    REQUIRE(g);
    const DihedralIdentifier di(f.di, g->N());
    const FlexionRange r = find_flexion_range(*g, di);
    REQUIRE(r.form == RangeForm::FullCircle);
    const auto dir = scratch("frames");
    const ExportResult ex = export_mesh_frames(*g, di, r, 9, dir);
    CHECK(ex.meshes.size() == 9);
    for (size_t i = 1; i < ex.eps1.size(); ++i) CHECK(ex.eps1[i] - ex.eps1[i - 1] == doctest::Approx(kTwoPi / 8));

    // The first frame sits at ε₁ = 0, the open flat folding.
    std::ifstream first(ex.meshes.front());
    const Mesh m = read_obj(first);
    Embedding flat;
    flat.u = m.vertices[0];
    flat.w = m.vertices[1];
    flat.v.assign(m.vertices.begin() + 2, m.vertices.end());
    CHECK(coplanarity(flat) < 1e-8);

    std::ifstream csv(ex.trace);
    std::string header, row;
    std::getline(csv, header);
    CHECK(count_fields(header) == static_cast<size_t>(3 * g->N() + 3));
    int rows = 0;
    while (std::getline(csv, row)) {
      CHECK(count_fields(row) == count_fields(header));
      ++rows;
    }
    CHECK(rows == 9);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("trace values use nine significant digits") {
    const CapGeometry g = expand_type12(fixture("I-OEE#1").params);
    const auto folds = enumerate_foldings(g);
    REQUIRE_FALSE(folds.empty());
    const auto& iv = folds.front().range.intervals.front();
    const auto trace = sample_trace(g, folds.front().di, Interval{iv.lo, std::min(iv.hi, iv.lo + to_rad(3.0))}, 1.0);
    std::stringstream out;
    write_trace_csv(out, g, trace);
    std::string header, row;
    std::getline(out, header);
    std::getline(out, row);
    std::stringstream fields(row);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      size_t digits = 0;
      for (char c : cell.substr(0, cell.find_first_of("eE"))) digits += std::isdigit(static_cast<unsigned char>(c)) ? 1 : 0;
      CHECK(digits <= 10);
    }
  }
}

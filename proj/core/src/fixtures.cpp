#include "flexspan/fixtures.hpp"

#include <stdexcept>

namespace flexspan {
namespace {

Fixture lengths(SubType s, int row, std::vector<double> l, std::vector<double> m, std::vector<double> base) {
  Fixture f;
  f.id = to_string(s) + "#" + std::to_string(row);
  f.params.subtype = s;
  f.params.N = s == SubType::II_OEE ? 2 * static_cast<int>(l.size()) : static_cast<int>(l.size());
  f.params.l = std::move(l);
  f.params.m = std::move(m);
  f.params.base = std::move(base);
  return f;
}

struct Seed {
  int N, LK;
  double l1, a1, b1, a2, b2;
  std::vector<double> odd;
  int fs;
  std::vector<double> even_alpha, beta;
  std::uint32_t di;
};

Fixture third(SubType s, int row, const Seed& d) {
  Fixture f;
  f.id = to_string(s) + "#" + std::to_string(row);
  ParameterSet& p = f.params;
  p.subtype = s;
  p.N = d.N;
  (s == SubType::III_OAE ? p.L : p.K) = d.LK;
  p.l1 = d.l1;
  p.alpha1 = to_rad(d.a1);
  p.beta1 = to_rad(d.b1);
  p.alpha2 = to_rad(d.a2);
  p.beta2 = to_rad(d.b2);
  for (double a : d.odd) p.odd_alpha.push_back(to_rad(a));
  f.fs_count = d.fs;
  f.even_alpha_deg = d.even_alpha;
  f.beta_deg = d.beta;
  f.di = d.di;
  return f;
}

std::vector<Fixture> build() {
  std::vector<Fixture> c;
  using S = SubType;
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> oee = {
      {{10, 11, 12, 13}, {8, 9}},
      {{10, 12, 11, 12, 11, 13}, {3, 4, 5}},
      {{10, 12, 11, 13, 14, 16, 15, 14}, {4, 3, 5, 6}},
      {{10, 13, 15, 13, 16, 12, 15, 14, 12, 13}, {10, 11, 12, 14, 13}},
      {{10, 13, 15, 13, 16, 12, 15, 14, 12, 13, 14, 11}, {10, 11, 12, 14, 13, 12}},
      {{10, 13, 15, 13, 16, 12, 15, 14, 12, 13, 14, 11, 13, 12}, {10, 15, 12, 14, 13, 12, 11}},
      {{10, 11, 12, 10, 10, 12, 11, 12, 10, 12, 11, 12, 10, 12, 11, 12}, {10, 11, 12, 10, 12, 10, 12, 11}},
  };
  for (size_t i = 0; i < oee.size(); ++i)
    c.push_back(lengths(S::I_OEE, static_cast<int>(i + 1), oee[i].first, {}, oee[i].second));

  const std::vector<std::pair<std::vector<double>, std::vector<double>>> aee = {
      {{10, 11, 12, 13}, {5, 4}},
      {{10, 14, 15, 12, 13, 11}, {5, 4, 6}},
      {{10, 11, 12, 13, 12, 11, 14, 13}, {5, 6, 4, 3}},
      {{10, 13, 14, 14, 12, 11, 13, 13, 17, 16}, {10, 9, 8, 7, 7}},
      {{10, 12, 11, 14, 13, 16, 15, 18, 17, 20, 19, 22}, {15, 16, 17, 18, 19, 20}},
      {{10, 12, 11, 14, 13, 16, 15, 18, 17, 20, 19, 22, 21, 24}, {16, 17, 18, 19, 20, 21, 22}},
      {{10, 15, 20, 11, 16, 21, 12, 17, 22, 13, 18, 23, 14, 19, 24, 17}, {15, 16, 17, 18, 18, 17, 16, 15}},
  };
  for (size_t i = 0; i < aee.size(); ++i)
    c.push_back(lengths(S::II_AEE, static_cast<int>(i + 1), aee[i].first, {}, aee[i].second));

  struct Oee2 {
    std::vector<double> l, m, base;
  };
  const std::vector<Oee2> oee2 = {
      {{10, 13}, {16, 12}, {8, 7}},
      {{10, 11, 12}, {12, 13, 15}, {5, 3, 4}},
      {{10, 12, 11, 13}, {14, 17, 15, 13}, {4, 3, 5, 6}},
      {{10, 13, 14, 15, 12}, {18, 21, 19, 16, 15}, {9, 10, 8, 6, 7}},
      {{10, 13, 14, 15, 12, 11}, {11, 14, 16, 13, 13, 12}, {5, 4, 7, 8, 3, 9}},
      {{10, 13, 14, 15, 12, 11, 13}, {11, 14, 15, 16, 13, 12, 14}, {10, 10, 8, 7, 6, 9, 12}},
      {{10, 10, 10, 10, 10, 10, 10, 10}, {13, 13, 13, 13, 13, 13, 13, 13}, {8, 10, 8, 10, 8, 10, 8, 10}},
  };
  for (size_t i = 0; i < oee2.size(); ++i)
    c.push_back(lengths(S::II_OEE, static_cast<int>(i + 1), oee2[i].l, oee2[i].m, oee2[i].base));
  c.back().di = 41055;

  const std::vector<Seed> oae = {
      {4, 3, 10, 45, 55, 30, 20, {}, 3, {30}, {112.12184, 87.83527}, 9},
      {6, 3, 10, 45, 55, 30, 20, {25}, 3, {16.40308, 13.59692}, {112.12184, 118.35370, 126.47742, 104.23836}, 41},
      {6, 4, 10, 22, 70, 100, 45, {40}, 1, {83.30367, 16.69633}, {21.45580, 60.58002, 74.47896, 82.03499}, 53},
      {8, 5, 10, 69, 55, 30, 45, {25, 21}, 3, {83.32691, 60.25878, 53.06814},
       {107.57407, 60.98961, 111.23558, 23.65624, 79.35616, 41.30176}, 55},
      {10, 5, 10, 54, 75, 47, 47, {35, 6, 41}, 8, {100.88503, 94.89234, 42.70820, 10.28448},
       {27.48350, 53.22171, 151.69262, 22.74071, 126.67290, 37.49349, 100.91108, 12.47047}, 805},
      {12, 7, 10, 75, 70, 30, 50, {25, 35, 20, 40}, 5, {64.27757, 66.40444, 67.23134, 63.46828, 29.98240},
       {113.98589, 42.89481, 53.01637, 69.15124, 140.43696, 25.11212, 111.18488, 36.54932, 65.99163, 26.93834},
       3149},
      {14, 8, 10, 71, 76, 70, 31, {32, 29, 23, 37, 30}, 13,
       {79.94471, 64.21691, 28.13814, 69.71837, 106.32765, 9.97746},
       {130.35037, 72.30741, 29.55757, 46.24987, 18.56180, 90.38385, 131.26467, 51.31861, 24.06035, 41.67901,
        19.54221, 122.67419},
       1009},
      {16, 8, 10, 71, 76, 70, 30, {36, 33, 23, 37, 31, 28}, 10,
       {77.23450, 58.22912, 38.51987, 40.02534, 72.02307, 16.65480, 38.24054},
       {119.99899, 64.61507, 41.84098, 57.99019, 24.38078, 88.80814, 111.30147, 69.20590, 62.35174, 40.78832,
        30.57510, 93.17456, 53.05563, 85.23613},
       3697},
  };
  for (size_t i = 0; i < oae.size(); ++i) c.push_back(third(S::III_OAE, static_cast<int>(i + 1), oae[i]));

  const std::vector<Seed> oas = {
      {4, 1, 10, 105, 30, 110, 25, {}, 2, {70.0}, {82.95205, 50.47518}, 3},
      {6, 1, 10, 45, 80, 42, 37, {48}, 4, {105.95429, 32.04571}, {99.13918, 49.21957, 37.80644, 28.97738}, 49},
      {8, 1, 10, 30, 85, 40, 70, {45, 45}, 5, {91.18022, 47.37676, 1.44302},
       {40.43044, 50.99966, 34.62276, 120.10265, 27.97615, 127.09938}, 53},
      {10, 1, 10, 30, 91, 31, 75, {27, 25, 30}, 3, {2.29641, 65.48725, 56.38952, 24.82681},
       {105.25131, 84.73441, 130.85701, 48.10408, 63.33243, 56.76065, 35.09934, 65.39581}, 799},
      {12, 1, 10, 41, 104, 29, 75, {27, 48, 21, 33}, 1, {90.80897, 16.13559, 3.70555, 23.68880, 16.66108},
       {53.32442, 35.56317, 23.46576, 104.33625, 67.20918, 115.40075, 87.09237, 109.81759, 109.93166, 129.25846},
       4081},
      {14, 2, 10, 55, 55, 100, 40, {49, 57, 55, 48, 50}, 6,
       {52.66573, 17.47293, 9.54257, 25.82052, 137.95959, 16.53867},
       {34.84383, 111.74521, 29.50679, 120.94430, 53.40928, 47.83117, 91.51635, 21.79280, 108.12969, 19.54775,
        39.29289, 101.21476},
       6197},
      {16, 3, 10, 70, 63, 69, 59, {62, 66, 69, 67, 68, 65}, 3,
       {35.52177, 88.31987, 87.36781, 70.20535, 39.37543, 64.82772, 85.38206},
       {56.25741, 52.29144, 77.21017, 32.20233, 69.65471, 50.95207, 36.56857, 62.72476, 44.85946, 78.08803,
        76.63756, 42.06629, 62.48605, 36.20026},
       14549},
  };
  for (size_t i = 0; i < oas.size(); ++i) c.push_back(third(S::III_OAS, static_cast<int>(i + 1), oas[i]));
  return c;
}

}  // namespace

const std::vector<Fixture>& fixture_catalog() {
  static const std::vector<Fixture> catalog = build();
  return catalog;
}

std::vector<Fixture> fixtures_of(SubType s) {
  std::vector<Fixture> out;
  for (const auto& f : fixture_catalog())
    if (f.params.subtype == s) out.push_back(f);
  return out;
}

const Fixture& fixture(const std::string& id) {
  for (const auto& f : fixture_catalog())
    if (f.id == id) return f;
  throw std::out_of_range("unknown fixture " + id);
}

}  // namespace flexspan

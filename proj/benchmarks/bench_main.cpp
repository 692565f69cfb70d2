#include <benchmark/benchmark.h>

#include "flexspan/construction.hpp"
#include "flexspan/fixtures.hpp"
#include "flexspan/flexion.hpp"
#include "flexspan/parameterization.hpp"
#include "flexspan/validation.hpp"

using namespace flexspan;

namespace {

CapGeometry reference_geometry(const Fixture& f) {
  if (is_type12(f.params.subtype)) return expand_type12(f.params);
  for (const auto& g : complete_suspension(f.params)) {
    bool ok = true;
    for (size_t i = 0; i < f.beta_deg.size(); ++i)
      ok = ok && std::abs(to_deg(g.beta(3 + static_cast<int>(i))) - f.beta_deg[i]) < 1e-4;
    if (ok) return g;
  }
  return {};
}

void BM_CompleteSuspension(benchmark::State& state) {
  const Fixture& f = fixture("III-OAE#8");
  for (auto _ : state) benchmark::DoNotOptimize(complete_suspension(f.params));
}
BENCHMARK(BM_CompleteSuspension)->Unit(benchmark::kMillisecond);

void BM_Construct(benchmark::State& state) {
  const CapGeometry g = expand_type12(fixture("II-OEE#7").params);
  const DihedralIdentifier di(0xA05F, g.N());
  for (auto _ : state) benchmark::DoNotOptimize(construct(g, to_rad(75.0), di));
}
BENCHMARK(BM_Construct)->Unit(benchmark::kMicrosecond);

void BM_DerivativeState(benchmark::State& state) {
  const CapGeometry g = expand_type12(fixture("II-OEE#7").params);
  const Embedding e = construct(g, to_rad(75.0), DihedralIdentifier(0xA05F, g.N()));
  for (auto _ : state) benchmark::DoNotOptimize(derivative_state(g, e));
}
BENCHMARK(BM_DerivativeState)->Unit(benchmark::kMicrosecond);

void BM_FlexionRange(benchmark::State& state) {
  const Fixture& f = fixture("III-OAE#8");
  const CapGeometry g = reference_geometry(f);
  for (auto _ : state) benchmark::DoNotOptimize(find_flexion_range(g, DihedralIdentifier(f.di, g.N())));
}
BENCHMARK(BM_FlexionRange)->Unit(benchmark::kMillisecond);

void BM_EnumerateFoldings(benchmark::State& state) {
  const CapGeometry g = expand_type12(fixture("I-OEE#4").params);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_foldings(g));
}
BENCHMARK(BM_EnumerateFoldings)->Unit(benchmark::kMillisecond);

void BM_ValidateFull(benchmark::State& state) {
  const CapGeometry g = expand_type12(fixture("II-OEE#7").params);
  const DihedralIdentifier di(0xA05F, g.N());
  const FlexionRange r = find_flexion_range(g, di);
  for (auto _ : state) benchmark::DoNotOptimize(validate_full(g, di, r));
}
BENCHMARK(BM_ValidateFull)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Serial reference versus OpenMP kernels for candidate enumeration and wall
// scanning. Thread count follows ADESTAB_THREADS.
#include "adestab/charge_engine.hpp"
#include "adestab/scanner.hpp"
#include "adestab/surface_lattice.hpp"

#include <benchmark/benchmark.h>

using namespace adestab;

namespace {

struct Fixture {
  SurfaceSpec spec;
  ChargeParams params;
  NumClass v;
  CandidateBox box;
};

Fixture make_fixture(const char* type, long e_bound) {
  Fixture f{SurfaceSpec::simple(parse_ade_type(type), 2), {}, {}, {}};
  f.params.beta = find_beta(f.spec, max_beta_margin(f.spec));
  f.v = make_class(f.spec, 1, 2, {}, RationalVector(f.spec.curve_count()), 0);
  f.box.h = {0, 2};
  f.box.e = {-e_bound, e_bound};
  f.box.ch2 = {-2, 2};
  f.box.b = 4;
  return f;
}

const Fixture& d4() {
  static const Fixture f = make_fixture("D4", 2);
  return f;
}

void BM_EnumerateSerial(benchmark::State& state) {
  const Fixture& f = d4();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_candidates_serial(f.spec, f.params, f.v, f.box));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * box_cardinality(f.spec, f.box)));
}

void BM_EnumerateParallel(benchmark::State& state) {
  const Fixture& f = d4();
  state.counters["threads"] = worker_count();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_candidates(f.spec, f.params, f.v, f.box));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * box_cardinality(f.spec, f.box)));
}

const std::vector<NumClass>& candidates() {
  static const std::vector<NumClass> c = enumerate_candidates_serial(d4().spec, d4().params, d4().v, d4().box);
  return c;
}

void BM_ScanSerial(benchmark::State& state) {
  const Fixture& f = d4();
  const auto& c = candidates();
  for (auto _ : state)
    benchmark::DoNotOptimize(scan_walls_serial(f.spec, f.params, f.v, c, WallParameter::S, default_range(WallParameter::S)));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * c.size()));
}

void BM_ScanParallel(benchmark::State& state) {
  const Fixture& f = d4();
  const auto& c = candidates();
  state.counters["threads"] = worker_count();
  for (auto _ : state)
    benchmark::DoNotOptimize(scan_walls(f.spec, f.params, f.v, c, WallParameter::S, default_range(WallParameter::S)));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * c.size()));
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

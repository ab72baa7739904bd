#include <benchmark/benchmark.h>

#include "wsr/checker.hpp"
#include "wsr/phpgen.hpp"
#include "wsr/propagation.hpp"

namespace {

void BM_PhpForward(benchmark::State &state) {
  auto n = static_cast<std::uint32_t>(state.range(0));
  auto f = wsr::php_formula(n);
  auto p = wsr::php_wsr_proof(n);
  for (auto _ : state) {
    auto r = wsr::check_forward(f, p);
    benchmark::DoNotOptimize(r.accepted);
  }
  state.counters["instructions"] = double(p.size());
}
BENCHMARK(BM_PhpForward)->DenseRange(5, 15, 5)->Unit(benchmark::kMillisecond);

void BM_PhpBackward(benchmark::State &state) {
  auto n = static_cast<std::uint32_t>(state.range(0));
  auto f = wsr::php_formula(n);
  auto p = wsr::php_wsr_proof(n);
  for (auto _ : state) {
    auto r = wsr::check_backward(f, p);
    benchmark::DoNotOptimize(r.core.size());
  }
}
BENCHMARK(BM_PhpBackward)->DenseRange(5, 15, 5)->Unit(benchmark::kMillisecond);

void BM_PhpPrForward(benchmark::State &state) {
  auto n = static_cast<std::uint32_t>(state.range(0));
  auto f = wsr::php_formula(n);
  auto p = wsr::php_pr_proof(n);
  wsr::CheckOptions opt;
  opt.mode = wsr::Mode::Pr;
  for (auto _ : state) {
    auto r = wsr::check_forward(f, p, opt);
    benchmark::DoNotOptimize(r.accepted);
  }
  state.counters["instructions"] = double(p.size());
}
BENCHMARK(BM_PhpPrForward)->DenseRange(5, 10, 5)->Unit(benchmark::kMillisecond);

// One RUP query of a short clause against a larger pigeonhole formula.
void BM_RupQuery(benchmark::State &state) {
  auto n = static_cast<std::uint32_t>(state.range(0));
  wsr::ClauseDb db(wsr::php_formula(n));
  wsr::Propagator prop(db);
  wsr::PhpIndex ix(n);
  auto c = ix.h(1, n - 1);
  for (auto _ : state) {
    auto r = prop.is_rup(c);
    benchmark::DoNotOptimize(r.rup);
  }
}
BENCHMARK(BM_RupQuery)->RangeMultiplier(2)->Range(8, 32);

} // namespace

BENCHMARK_MAIN();

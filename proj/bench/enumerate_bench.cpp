#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "deristab/enumerate.hpp"

namespace {

deristab::Derivation shear() {
  std::vector<std::string> c{"1", "x1"};
  return deristab::Derivation::parse(c, 2);
}

deristab::Derivation rotation() {
  std::vector<std::string> c{"x2", "-x1"};
  return deristab::Derivation::parse(c, 2);
}

void BM_Reference(benchmark::State& state, deristab::Derivation d) {
  deristab::EnumerationBounds b{static_cast<unsigned>(state.range(0)),
                                static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(deristab::bounded_isotropy_enumeration_reference(d, b));
}

void BM_Parallel(benchmark::State& state, deristab::Derivation d) {
  deristab::EnumerationBounds b{static_cast<unsigned>(state.range(0)),
                                static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(deristab::bounded_isotropy_enumeration(d, b));
}

BENCHMARK_CAPTURE(BM_Reference, shear, shear())->Args({1, 2})->Args({2, 1})->Args({2, 2})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, shear, shear())->Args({1, 2})->Args({2, 1})->Args({2, 2})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Reference, rotation, rotation())->Args({1, 2})->Args({2, 1})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, rotation, rotation())->Args({1, 2})->Args({2, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

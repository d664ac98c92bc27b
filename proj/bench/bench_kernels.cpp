#include <benchmark/benchmark.h>

#include "hyperlim/generators.hpp"
#include "hyperlim/operators.hpp"
#include "hyperlim/profiles.hpp"
#include "hyperlim/spaces.hpp"
#include "hyperlim/tensors.hpp"

using namespace hyperlim;

namespace {

SymmetricTensor er_tensor(int n) {
  ModelSpec spec = parse_model_spec("er_uniform:p=0.125,r=3");
  spec.n = n;
  return adjacency_tensor(generate(spec, 7).hypergraph, 3);
}

std::vector<SymmetricTensor> random_inputs(int n, int s, std::size_t count) {
  auto space = build_space(n, s, MeasureFamily::uniform);
  auto fns = sample_test_functions(space, CatalogEntry::of(CatalogEntry::Kind::uniform), count, 11);
  std::vector<SymmetricTensor> out;
  for (const auto& f : fns) out.push_back(SymmetricTensor::from_canonical_values(s, n, f.values()));
  return out;
}

void BM_s_action_parallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int s = static_cast<int>(state.range(1));
  auto t = er_tensor(n);
  auto in = random_inputs(n, s, 2);
  for (auto _ : state) benchmark::DoNotOptimize(s_action_apply(t, s, in));
}

void BM_s_action_reference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int s = static_cast<int>(state.range(1));
  auto t = er_tensor(n);
  auto in = random_inputs(n, s, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::s_action_apply(t, s, in));
}

void BM_profile_law(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto op = from_tensor_action(normalize(er_tensor(n), Normalization::uniform()), 2);
  SamplerSpec spec{{CatalogEntry::of(CatalogEntry::Kind::one)}, 1, 0};
  auto tuples = sample_tuples(op, 1, spec);
  for (auto _ : state) benchmark::DoNotOptimize(profile_law(op, 1, tuples[0]));
}

}  // namespace

BENCHMARK(BM_s_action_parallel)->Args({20, 1})->Args({20, 2})->Args({40, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_s_action_reference)->Args({20, 1})->Args({20, 2})->Args({40, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_profile_law)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

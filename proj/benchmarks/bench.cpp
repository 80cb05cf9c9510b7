#include <benchmark/benchmark.h>

#include <random>

#include "nikulin/enumerate.hpp"
#include "nikulin/model.hpp"
#include "nikulin/orbit.hpp"
#include "nikulin/smith.hpp"

namespace nikulin {
namespace {

IntMatrix random_matrix(std::size_t n, long bound, std::mt19937_64& gen) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(gen);
  return m;
}

void BM_SmithRandom(benchmark::State& state) {
  std::mt19937_64 gen(7);
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 20, gen);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithRandom)->Arg(4)->Arg(8)->Arg(16);

void BM_SmithLambdaY(benchmark::State& state) {
  const auto& g = default_model().lambda_y()->gram();
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(g));
}
BENCHMARK(BM_SmithLambdaY);

void BM_OrbitExplore(benchmark::State& state) {
  const auto& m = default_model();
  const auto gens = root_reflections(short_roots(m.lambda_y()));
  OrbitBudget b;
  b.max_depth = static_cast<std::size_t>(state.range(0));
  const auto seed = m.L(1) + m.e2();
  std::size_t members = 0;
  for (auto _ : state) members = orbit_explore(seed, gens, b).size();
  state.counters["members"] = static_cast<double>(members);
}
BENCHMARK(BM_OrbitExplore)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_EnumerateIsotropic(benchmark::State& state) {
  const auto& m = default_model();
  const EnumerationWindow win{{"U1", "E8", "G1", "G2"}, 1};
  std::size_t count = 0;
  for (auto _ : state) count = enumerate_primitive_isotropic(m.lambda_y(), win).size();
  state.counters["vectors"] = static_cast<double>(count);
}
BENCHMARK(BM_EnumerateIsotropic)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace nikulin

BENCHMARK_MAIN();

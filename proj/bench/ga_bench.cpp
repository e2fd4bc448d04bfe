// Serial reference vs OpenMP kernels on a large random instance.

#include <benchmark/benchmark.h>

#include <vector>

#include "mobility/ga_kernels.hpp"
#include "test_support.hpp"

namespace {

using namespace mobility;

constexpr int kPopulation = 512;

const Instance& large_instance() {
  static const Instance inst = [] {
    testing::RandomInstanceParams params;
    params.min_sites = 30;
    params.max_sites = 30;
    params.max_list = 40;
    params.max_capacity = 200;
    Rng rng(7);
    return testing::random_instance(rng, params);
  }();
  return inst;
}

struct Fixture {
  PrefixTable table{large_instance()};
  GAConfig config;
  std::vector<Chromosome> population = std::vector<Chromosome>(kPopulation);
  std::vector<double> values = std::vector<double>(kPopulation);
  std::vector<Chromosome> children = std::vector<Chromosome>(kPopulation);

  explicit Fixture(int workers) {
    config.population_size = kPopulation;
    config.workers = workers;
    initialize_population_serial(table, config, population);
    evaluate_population_serial(table, population, values);
  }
};

void BM_EvaluateSerial(benchmark::State& state) {
  Fixture f(1);
  for (auto _ : state) {
    evaluate_population_serial(f.table, f.population, f.values);
    benchmark::DoNotOptimize(f.values.data());
  }
}

void BM_EvaluateParallel(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    evaluate_population(f.table, f.population, f.values, f.config.workers);
    benchmark::DoNotOptimize(f.values.data());
  }
}

void BM_BreedSerial(benchmark::State& state) {
  Fixture f(1);
  for (auto _ : state) {
    breed_serial(f.table, f.config, 2, f.population, f.values, f.children);
    benchmark::DoNotOptimize(f.children.data());
  }
}

void BM_BreedParallel(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    breed(f.table, f.config, 2, f.population, f.values, f.children);
    benchmark::DoNotOptimize(f.children.data());
  }
}

BENCHMARK(BM_EvaluateSerial);
BENCHMARK(BM_EvaluateParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0);
BENCHMARK(BM_BreedSerial);
BENCHMARK(BM_BreedParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0);

}  // namespace

BENCHMARK_MAIN();

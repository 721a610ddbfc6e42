// Microbenchmarks for the hot paths: polynomial products, moment
// functionals, influence-set construction, per-sample statistics and the
// full replication loop.

#include <benchmark/benchmark.h>

#include "gjb/families.hpp"
#include "gjb/influence.hpp"
#include "gjb/moments.hpp"
#include "gjb/random.hpp"
#include "gjb/simulate.hpp"
#include "gjb/stats.hpp"

namespace {

void BM_poly_mul(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::vector<double> c(static_cast<std::size_t>(d) + 1, 1.0);
  gjb::Polynomial p(c), q(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(p * q);
  }
}
BENCHMARK(BM_poly_mul)->Arg(6)->Arg(12)->Arg(24);

void BM_expect(benchmark::State& state) {
  gjb::MomentModel model = gjb::normal_moments(0.0, 1.0);
  gjb::Polynomial p = gjb::Polynomial::monomial(12) -
                      45.0 * gjb::Polynomial::monomial(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gjb::expect(p, model.moments()));
  }
}
BENCHMARK(BM_expect);

void BM_build_D(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  gjb::MomentModel model = gjb::normal_moments(0.0, 1.0);
  gjb::FunctionFamily family = gjb::FunctionFamily::square();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gjb::build_D(k, family, model));
  }
}
BENCHMARK(BM_build_D)->Arg(2)->Arg(3)->Arg(6);

void BM_statistic_T(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gjb::RandomStream stream(7);
  gjb::MomentModel model = gjb::normal_moments(0.0, 1.0);
  gjb::Sample s = gjb::sample_model(model, static_cast<std::size_t>(n), stream);
  gjb::FunctionFamily family = gjb::FunctionFamily::square();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gjb::statistic_T(s, family, 3));
  }
}
BENCHMARK(BM_statistic_T)->Arg(100)->Arg(1000)->Arg(10000);

void BM_replications(benchmark::State& state) {
  gjb::SimulationConfig cfg{gjb::normal_moments(0.0, 1.0),
                            gjb::normal_moments(0.0, 1.0)};
  cfg.n = static_cast<int>(state.range(0));
  cfg.B = 50;
  cfg.seed = 99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gjb::run_replications(cfg));
  }
}
BENCHMARK(BM_replications)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();

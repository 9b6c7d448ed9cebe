// Copyright 2026 The hirelab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "hirelab/analysis.hpp"
#include "hirelab/behavior.hpp"
#include "hirelab/equilibrium.hpp"

namespace {

using namespace hirelab;

void BM_EnumerateEquilibria3x3(benchmark::State& state) {
  const Environment env = paper_environment();
  const Mechanism mech = builtin_mechanism("3x3-E");
  EnumerationOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_ex_post_equilibria(env, mech, opts));
  }
}
BENCHMARK(BM_EnumerateEquilibria3x3)->Arg(1)->Arg(4);

void BM_CompositionSuite(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_proposition1_suite(static_cast<int>(state.range(0)), 7));
  }
}
BENCHMARK(BM_CompositionSuite)->Arg(10)->Arg(50);

void BM_RunSession(benchmark::State& state) {
  SessionConfig config;
  config.mechanism = "3x3-E";
  config.seed = 11;
  config.session_id = 1;
  const std::vector<BehaviorRule> population(
      12, BehaviorRule::noisy(BehaviorRule::lie_averse(Rational(3)),
                              Rational(1, 20)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_session(config, population));
  }
}
BENCHMARK(BM_RunSession);

void BM_RunExperiment(benchmark::State& state) {
  ExperimentConfig config;
  config.grid = paper_session_grid();
  config.population = calibration_population();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(config, 2024, threads));
  }
}
BENCHMARK(BM_RunExperiment)->Arg(1)->Arg(4);

void BM_FitAllModels(benchmark::State& state) {
  ExperimentConfig config;
  config.grid = paper_session_grid();
  config.population = calibration_population();
  const SessionDataset data = run_experiment(config, 2024);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_all_models(data));
  }
}
BENCHMARK(BM_FitAllModels);

void BM_RankTests(benchmark::State& state) {
  ExperimentConfig config;
  config.grid = paper_session_grid();
  config.population = calibration_population();
  const SessionDataset data = run_experiment(config, 2024);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_tests(data));
  }
}
BENCHMARK(BM_RankTests);

}  // namespace

BENCHMARK_MAIN();

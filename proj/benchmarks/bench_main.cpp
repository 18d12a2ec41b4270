// Copyright 2026 The gamecert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <sstream>

#include <benchmark/benchmark.h>

#include "gamecert/game.hpp"
#include "gamecert/hierarchy.hpp"
#include "gamecert/oracles.hpp"
#include "gamecert/polynomial.hpp"
#include "gamecert/projector.hpp"
#include "gamecert/sdp.hpp"
#include "gamecert/sos.hpp"
#include "test_util.hpp"

namespace {

using namespace gamecert;
using namespace gamecert::testing;

void BM_PolynomialMultiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int degree = static_cast<int>(state.range(0));
  const Polynomial p = RandomPolynomial(rng, 4, degree), q = RandomPolynomial(rng, 4, degree);
  for (auto _ : state) benchmark::DoNotOptimize(p * q);
}
BENCHMARK(BM_PolynomialMultiply)->Arg(2)->Arg(4)->Arg(6);

void BM_SymmetrizedJacobianDeg8(benchmark::State& state) {
  const PolynomialGame g = LoadCorpusGame("deg8");
  for (auto _ : state) benchmark::DoNotOptimize(SymmetrizedJacobian(g));
}
BENCHMARK(BM_SymmetrizedJacobianDeg8)->Unit(benchmark::kMillisecond);

void BM_CompileMonotone(benchmark::State& state) {
  const PolynomialGame g = LoadCorpusGame(state.range(0) == 4 ? "deg4" : "deg8");
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Compile(MonotoneProgram(g, level)));
}
BENCHMARK(BM_CompileMonotone)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SolveRandomSdp(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<SdpProblem> problems;
  for (int k = 0; k < 16; ++k) problems.push_back(RandomFeasibleSdp(rng));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(SolveSdp(problems[k++ % problems.size()]));
}
BENCHMARK(BM_SolveRandomSdp)->Unit(benchmark::kMillisecond);

void BM_MaxEigenvalueSdp(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const SdpProblem p = MaxEigenvalueSdp(RandomSymmetric(rng, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(SolveSdp(p));
}
BENCHMARK(BM_MaxEigenvalueSdp)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CertifyCorpus(benchmark::State& state, const char* name, int level) {
  const PolynomialGame g = LoadCorpusGame(name);
  for (auto _ : state) benchmark::DoNotOptimize(CertifyMonotone(g, level));
}
BENCHMARK_CAPTURE(BM_CertifyCorpus, driver_l2, "driver", 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CertifyCorpus, fig1_l2, "fig1", 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CertifyCorpus, fig1_l4, "fig1", 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CertifyCorpus, deg4_l4, "deg4", 4)->Unit(benchmark::kMillisecond);

void BM_ProjectFig3(benchmark::State& state) {
  ProjectionSpec spec;
  spec.reference = LoadCorpusGame("fig3");
  spec.level = static_cast<int>(state.range(0));
  spec.zero_sum = spec.preserve_support = true;
  for (auto _ : state) benchmark::DoNotOptimize(Project(spec));
}
BENCHMARK(BM_ProjectFig3)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ExportSdpaDeg8(benchmark::State& state) {
  const SdpProblem p = Compile(MonotoneProgram(LoadCorpusGame("deg8"), 8)).sdp;
  for (auto _ : state) {
    std::ostringstream out;
    WriteSdpa(p, out);
    benchmark::DoNotOptimize(out.str().size());
  }
}
BENCHMARK(BM_ExportSdpaDeg8)->Unit(benchmark::kMillisecond);

void BM_SampleMaxEigenvalue(benchmark::State& state) {
  const PolynomialGame g = LoadCorpusGame("deg4");
  SampleOptions so;
  so.n_samples = 10000;
  so.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(SampleMaxEigenvalue(g, CertKind::kMonotone, so));
}
BENCHMARK(BM_SampleMaxEigenvalue)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

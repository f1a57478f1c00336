/*
 * Copyright 2026 The locdisc Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "locdisc/dataset.hpp"
#include "locdisc/graph.hpp"
#include "locdisc/kernels.hpp"
#include "locdisc/solver.hpp"

namespace {

using namespace locdisc;

Dataset rings(benchmark::State& state) {
  return make_concentric_rings(static_cast<int>(state.range(0)) / 2, 0.1, 0);
}

void BM_GramMatrix(benchmark::State& state) {
  const Dataset ds = rings(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram_matrix(ds.samples, RbfKernel{1.0}));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GramMatrix)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_KnnCliques(benchmark::State& state) {
  const Dataset ds = rings(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn_cliques(ds.samples, 5));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KnnCliques)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_AssembleCliqueLaplacian(benchmark::State& state) {
  const Dataset ds = rings(state);
  const CliqueSet cliques = knn_cliques(ds.samples, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_clique_laplacian(cliques, ds.samples, 1.0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssembleCliqueLaplacian)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_Fit(benchmark::State& state) {
  const Dataset ds = rings(state);
  const GramMatrix K = gram_matrix(ds.samples, RbfKernel{median_heuristic_gamma(ds.samples)});
  std::vector<Label> labels(ds.labels.size());
  labels[0] = 0;
  labels[1] = 1;
  const SupervisedLaplacian Lw = build_supervised_laplacian(labels, 2);
  const CliqueLaplacian L =
      assemble_clique_laplacian(knn_cliques(ds.samples, 5), ds.samples, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(K, Lw, L, 1.0, 2));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Fit)->RangeMultiplier(2)->Range(64, 512)->Complexity();

}  // namespace

BENCHMARK_MAIN();

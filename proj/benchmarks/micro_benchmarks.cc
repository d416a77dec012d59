// Copyright 2026 The PriArTa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>

#include "priarta/gaussian_geometry.h"
#include "priarta/privacy.h"
#include "priarta/protocol.h"
#include "priarta/random.h"
#include "priarta/statistics.h"

namespace priarta {
namespace {

Eigen::MatrixXd RandomMatrix(int rows, int cols, uint64_t seed) {
  Prng prng(seed);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = prng.NextGaussian();
  }
  return m;
}

SymmetricMatrix RandomPsd(int d, uint64_t seed) {
  const Eigen::MatrixXd g = RandomMatrix(d, d, seed);
  return SymmetricMatrix::Create(g * g.transpose() / d).value();
}

GaussianSummary RandomSummary(int d, uint64_t seed) {
  Eigen::VectorXd mean = RandomMatrix(d, 1, seed ^ 0x9e37).col(0);
  return GaussianSummary::Create(std::move(mean), RandomPsd(d, seed), 1000)
      .value();
}

void BM_Wasserstein2(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const GaussianSummary a = RandomSummary(d, 1);
  const GaussianSummary b = RandomSummary(d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Wasserstein2Gaussian(a, b));
}
BENCHMARK(BM_Wasserstein2)->Arg(8)->Arg(64)->Arg(256);

void BM_Wasserstein2InnerRoot(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const GaussianSummary a = RandomSummary(d, 1);
  const GaussianSummary b = RandomSummary(d, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Wasserstein2GaussianInnerRoot(a, b));
  }
}
BENCHMARK(BM_Wasserstein2InnerRoot)->Arg(8)->Arg(64)->Arg(256);

void BM_SqrtmPsd(benchmark::State& state) {
  const SymmetricMatrix a = RandomPsd(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(SqrtmPsd(a));
}
BENCHMARK(BM_SqrtmPsd)->Arg(8)->Arg(64)->Arg(256);

void BM_ClipAndSummarize(benchmark::State& state) {
  const Eigen::MatrixXd x =
      RandomMatrix(static_cast<int>(state.range(0)), 64, 4);
  for (auto _ : state) {
    auto clipped = ClipToBall(x, 20.0);
    benchmark::DoNotOptimize(Summarize(*clipped));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClipAndSummarize)->Arg(1000)->Arg(10000);

void BM_GaussianMechanism(benchmark::State& state) {
  const EmbeddingSet set =
      ClipToBall(RandomMatrix(static_cast<int>(state.range(0)), 64, 5), 20.0)
          .value();
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ApplyGaussianMechanism(set, 2.0, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 64);
}
BENCHMARK(BM_GaussianMechanism)->Arg(1000)->Arg(10000);

StatsResponseMessage ResponseOfDim(int d) {
  return StatsResponseMessage::FromSummary(RandomSummary(d, 6), "bench/seller",
                                           9.08, "0123456789abcdef");
}

void BM_EncodeFrame(benchmark::State& state) {
  const ProtocolMessage message =
      ResponseOfDim(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(EncodeFrame(message));
}
BENCHMARK(BM_EncodeFrame)->Arg(8)->Arg(64)->Arg(256);

void BM_DecodeFrame(benchmark::State& state) {
  const std::string frame =
      EncodeFrame(ResponseOfDim(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(DecodeFrame(frame));
  state.SetBytesProcessed(state.iterations() * frame.size());
}
BENCHMARK(BM_DecodeFrame)->Arg(8)->Arg(64)->Arg(256);

}  // namespace
}  // namespace priarta

BENCHMARK_MAIN();

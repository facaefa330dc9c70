// Copyright 2026 The selfdeg Authors
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

#include <benchmark/benchmark.h>

#include "selfdeg/degset.hpp"
#include "selfdeg/dsl.hpp"
#include "selfdeg/engine.hpp"
#include "selfdeg/forms.hpp"

namespace {

using namespace selfdeg;

manifold::ManifoldDesc parse(const char* text) { return *dsl::parse(text).desc; }

void BM_ParseAndCanonicalize(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsl::render(parse("2*I120 # ~I120 # L(7,1) # L(7,2) # L(7,3) # S2xS1")));
  }
}
BENCHMARK(BM_ParseAndCanonicalize);

void BM_LensIcosahedralSum(benchmark::State& state) {
  const auto m = parse("I120 # ~I120 # L(7,1) # L(7,2) # 2*L(7,3)");
  for (auto _ : state) benchmark::DoNotOptimize(engine::degrees(m));
}
BENCHMARK(BM_LensIcosahedralSum);

void BM_LensSumByModulus(benchmark::State& state) {
  const numth::Int p = state.range(0);
  std::vector<numth::Int> qs;
  for (numth::Int q = 1; q < p && qs.size() < 8; ++q) {
    if (numth::gcd(p, q) == 1) qs.push_back(q);
  }
  for (auto _ : state) benchmark::DoNotOptimize(engine::d_iso_lens_group(p, qs));
}
BENCHMARK(BM_LensSumByModulus)->RangeMultiplier(8)->Range(8, 32768);

void BM_SolMembership(benchmark::State& state) {
  const degset::DegreeSet d = engine::degrees(parse("TB[7,12;4,7]"));
  numth::Int x = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(degset::contains(d, x));
    x = x % 100000 + 1;
  }
}
BENCHMARK(BM_SolMembership);

void BM_SolListing(benchmark::State& state) {
  const degset::DegreeSet d = engine::degrees(parse("TB[2,1;1,1]"));
  for (auto _ : state) benchmark::DoNotOptimize(degset::enumerate(d, -state.range(0), state.range(0)));
}
BENCHMARK(BM_SolListing)->Range(1 << 8, 1 << 16);

void BM_NilListing(benchmark::State& state) {
  const degset::DegreeSet d = engine::degrees(parse("SF(o0; 1/2,1/3,1/6)"));
  for (auto _ : state) benchmark::DoNotOptimize(degset::enumerate(d, 1, state.range(0)));
}
BENCHMARK(BM_NilListing)->Range(1 << 10, 1 << 24);

void BM_Represents(benchmark::State& state) {
  const forms::BinaryForm f(3, 5, -7);
  numth::Int n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forms::represents(f, n));
    n = n % 1000003 + 7;
  }
}
BENCHMARK(BM_Represents);

void BM_ProductGeometry(benchmark::State& state) {
  const auto m = parse("SF(o2; 1/5,1/5,-2/5,1/7,2/7,-3/7)");
  for (auto _ : state) benchmark::DoNotOptimize(engine::degrees(m));
}
BENCHMARK(BM_ProductGeometry);

}  // namespace

BENCHMARK_MAIN();

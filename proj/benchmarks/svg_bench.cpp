// Copyright 2026 The meol Authors
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

#include <fstream>
#include <sstream>

#include "meol/svg/raster.hpp"
#include "meol/svg/simplify.hpp"

namespace {

std::string corpus(const char* name) {
  std::ifstream in(std::string(MEOL_TEST_DATA) + "/corpus/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_Parse(benchmark::State& state) {
  auto text = corpus("19_deep_nesting.svg");
  for (auto _ : state) benchmark::DoNotOptimize(meol::svg::parse_svg(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Parse);

void BM_Rasterize(benchmark::State& state) {
  auto doc = meol::svg::parse_svg(corpus("14_car.svg"));
  int size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(meol::svg::rasterize(doc, size, size));
}
BENCHMARK(BM_Rasterize)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Simplify(benchmark::State& state) {
  auto doc = meol::svg::parse_svg(corpus("19_deep_nesting.svg"));
  for (auto _ : state) benchmark::DoNotOptimize(meol::svg::simplify(doc));
}
BENCHMARK(BM_Simplify)->Unit(benchmark::kMillisecond);

}  // namespace

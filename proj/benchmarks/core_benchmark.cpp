// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "cobuild/induction.hpp"
#include "cobuild/parser.hpp"
#include "cobuild/planner.hpp"
#include "cobuild/repository.hpp"
#include "cobuild/world.hpp"

namespace cobuild {
namespace {

Task build_task(const std::string& kind, const std::vector<int>& dims, Position anchor) {
  Task t{"build-" + kind, {Constant{"red"}}};
  for (int d : dims) t.args.push_back(IntConst{d});
  t.args.push_back(PosConst{anchor});
  return t;
}

// Hollow w x h outline standing in the xy plane.
BlockList frame_blocks(int w, int h) {
  BlockList out;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x == 0 || y == 0 || x == w - 1 || y == h - 1) out.push_back({{x, y, 0}, Color::Red});
    }
  }
  return out;
}

void BM_PlanCuboid(benchmark::State& state) {
  Repository repo;
  World world;
  int n = static_cast<int>(state.range(0));
  Task task = build_task("cuboid", {n, n, n}, {0, 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(plan(task, world, repo));
  state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_PlanCuboid)->Arg(2)->Arg(4)->Arg(8);

void BM_PlanAndExecute(benchmark::State& state) {
  Repository repo;
  Task task = build_task("tower", {5}, {3, 0, 3});
  for (auto _ : state) {
    World world;
    InstanceRegistry reg;
    auto result = plan(task, world, repo);
    execute(std::get<Plan>(result), world, reg, repo);
    benchmark::DoNotOptimize(world);
  }
}
BENCHMARK(BM_PlanAndExecute);

void BM_Parse(benchmark::State& state) {
  ParseContext ctx;
  ctx.referents.push_back({1, "tower", Color::Red});
  const std::vector<std::string> utterances = {
      "build a red tower of height 3",
      "put a blue row of width 4 on top of it",
      "build a green cuboid with width 2, height 3 and depth 4",
      "undo that",
  };
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse(utterances[i++ % utterances.size()], ctx));
  }
}
BENCHMARK(BM_Parse);

void BM_Decompose(benchmark::State& state) {
  int w = static_cast<int>(state.range(0));
  BlockList blocks = frame_blocks(w, w + 1);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(blocks));
}
BENCHMARK(BM_Decompose)->Arg(3)->Arg(5)->Arg(7);

void BM_Generalize(benchmark::State& state) {
  TrainingInstance inst{"frame", frame_blocks(5, 6), {{"width", 3}, {"height", 6}}};
  auto covers = decompose(inst.blocks);
  for (auto _ : state) benchmark::DoNotOptimize(generalize(covers, inst));
}
BENCHMARK(BM_Generalize);

void BM_FirstQuery(benchmark::State& state) {
  TrainingInstance inst{"frame", frame_blocks(5, 6), {{"width", 3}, {"height", 6}}};
  auto live = generalize(decompose(inst.blocks), inst);
  for (auto _ : state) benchmark::DoNotOptimize(next_query(live, inst));
}
BENCHMARK(BM_FirstQuery);

}  // namespace
}  // namespace cobuild

BENCHMARK_MAIN();

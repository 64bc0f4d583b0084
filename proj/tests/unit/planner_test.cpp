// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "cobuild/error.hpp"
#include "cobuild/planner.hpp"
#include "ground_truth.hpp"

namespace cobuild {
namespace {

Task build(const std::string& kind, Color c, std::vector<int> dims, Position anchor) {
  Task t{"build-" + kind, {Constant{std::string(to_string(c))}}};
  for (int d : dims) t.args.push_back(IntConst{d});
  t.args.push_back(PosConst{anchor});
  return t;
}

TEST(Planner, TowerPlanIsBottomUp) {
  World w;
  Repository repo;
  auto r = plan(build("tower", Color::Red, {3}, {5, 0, 5}), w, repo);
  ASSERT_TRUE(std::holds_alternative<Plan>(r));
  const auto& ops = std::get<Plan>(r).ops;
  std::vector<PlaceOp> expected = {
      {{5, 0, 5}, Color::Red}, {{5, 1, 5}, Color::Red}, {{5, 2, 5}, Color::Red}};
  EXPECT_EQ(ops, expected);
}

TEST(Planner, FloatingPlacementIsUnsupported) {
  World w;
  Repository repo;
  auto r = plan(build("square", Color::Blue, {2}, {2, 3, 2}), w, repo);
  ASSERT_TRUE(std::holds_alternative<PlanFailure>(r));
  EXPECT_EQ(std::get<PlanFailure>(r).reason, FailureReason::Unsupported);
  EXPECT_EQ(w.block_count(), 0u);
}

TEST(Planner, OutOfBoundsAndCollision) {
  World w;
  Repository repo;
  auto oob = plan(build("row", Color::Red, {4}, {9, 0, 0}), w, repo);
  ASSERT_TRUE(std::holds_alternative<PlanFailure>(oob));
  EXPECT_EQ(std::get<PlanFailure>(oob).reason, FailureReason::OutOfBounds);

  InstanceRegistry reg;
  execute(std::get<Plan>(plan(build("block", Color::Red, {}, {2, 0, 0}), w, repo)), w, reg, repo);
  auto hit = plan(build("row", Color::Red, {3}, {0, 0, 0}), w, repo);
  ASSERT_TRUE(std::holds_alternative<PlanFailure>(hit));
  EXPECT_EQ(std::get<PlanFailure>(hit).reason, FailureReason::Collision);
  EXPECT_EQ(std::get<PlanFailure>(hit).pos, (Position{2, 0, 0}));
}

TEST(Planner, UnknownKindHasNoMethod) {
  World w;
  Repository repo;
  auto r = plan(build("pyramid", Color::Red, {2}, {0, 0, 0}), w, repo);
  ASSERT_TRUE(std::holds_alternative<PlanFailure>(r));
  EXPECT_EQ(std::get<PlanFailure>(r).reason, FailureReason::NoMethod);
}

TEST(Planner, FallsBackToSupportFirstOrder) {
  // A row resting on a tower's top: its left cell only becomes supported once
  // the middle one is placed.
  World w;
  Repository repo;
  InstanceRegistry reg;
  execute(std::get<Plan>(plan(build("tower", Color::Red, {3}, {1, 0, 0}), w, repo)), w, reg, repo);
  auto r = plan(build("row", Color::Blue, {3}, {0, 3, 0}), w, repo);
  ASSERT_TRUE(std::holds_alternative<Plan>(r));
  const auto& ops = std::get<Plan>(r).ops;
  ASSERT_EQ(ops.size(), 3u);
  EXPECT_EQ(ops[0].pos, (Position{1, 3, 0}));
  execute(std::get<Plan>(r), w, reg, repo);
  EXPECT_EQ(w.block_count(), 6u);
}

TEST(Planner, LearnedConceptDecomposesIntoParts) {
  World w;
  Repository repo;
  repo.add(testing::l_definition());
  auto r = plan(build("l", Color::Green, {4, 3}, {4, 0, 5}), w, repo);
  ASSERT_TRUE(std::holds_alternative<Plan>(r));
  PositionSet cells;
  for (const auto& op : std::get<Plan>(r).ops) {
    EXPECT_EQ(op.color, Color::Green);
    cells.insert(op.pos);
  }
  EXPECT_EQ(cells, (PositionSet{{4, 0, 5}, {4, 1, 5}, {4, 2, 5}, {4, 3, 5}, {5, 0, 5}, {6, 0, 5}}));
}

TEST(Planner, ExecuteRegistersInstanceAndGroup) {
  World w;
  Repository repo;
  InstanceRegistry reg;
  const auto& inst =
      execute(std::get<Plan>(plan(build("cube", Color::Yellow, {2}, {0, 0, 0}), w, repo)), w, reg,
              repo);
  EXPECT_EQ(inst.kind, "cube");
  EXPECT_EQ(inst.blocks.size(), 8u);
  EXPECT_EQ(w.block_count(), 8u);
  w.undo_group();
  EXPECT_EQ(w.block_count(), 0u);
}

TEST(Planner, StalePlanIsRejectedWithoutSideEffects) {
  World w;
  Repository repo;
  InstanceRegistry reg;
  Plan p = std::get<Plan>(plan(build("row", Color::Red, {3}, {0, 0, 0}), w, repo));
  execute(std::get<Plan>(plan(build("block", Color::Red, {}, {2, 0, 0}), w, repo)), w, reg, repo);
  try {
    execute(p, w, reg, repo);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::StalePlan);
  }
  EXPECT_EQ(w.block_count(), 1u);
  EXPECT_EQ(reg.all().size(), 1u);
}

TEST(Planner, MethodsListPrimitivesFirst) {
  Repository repo;
  repo.add(testing::l_definition());
  auto ms = methods(repo);
  ASSERT_EQ(ms.size(), 18u);
  EXPECT_EQ(ms.front().kind, "block");
  EXPECT_EQ(ms.back().kind, "l");
}

}  // namespace
}  // namespace cobuild

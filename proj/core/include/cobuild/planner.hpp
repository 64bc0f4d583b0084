// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cobuild/concept.hpp"
#include "cobuild/geometry.hpp"
#include "cobuild/logic.hpp"
#include "cobuild/repository.hpp"
#include "cobuild/world.hpp"

namespace cobuild {

/// Ground place-block(pos, color) operator.
struct PlaceOp {
  Position pos;
  Color color;
  friend bool operator==(const PlaceOp&, const PlaceOp&) = default;
};

struct Plan {
  Task task;
  std::vector<PlaceOp> ops;
};

enum class FailureReason { OutOfBounds, Collision, Unsupported, NoMethod };

std::string_view to_string(FailureReason r);

struct PlanFailure {
  FailureReason reason;
  Position pos;
  std::string task;  // rendered task that failed
};

using PlanResult = std::variant<Plan, PlanFailure>;

/// How a method decomposes its task.
enum class MethodBody {
  LayeredBlocks,       // primitive: place blocks in (y, x, z) order
  SupportFirstBlocks,  // primitive: grow from supported cells, ties by (y, x, z)
  PartsInCoverOrder,   // learned: one subtask per part, as induced
  PartsLowestFirst,    // learned: parts ordered by their lowest block
};

/// An HTN method for build-<kind>. The guard requires the whole extent to be
/// in bounds and free.
struct Method {
  std::string kind;
  MethodBody body;
};

/// All methods in repository order; primitives first.
std::vector<Method> methods(const Repository& repo);
std::string render(const Method& m, const Repository& repo);

/// Total-order HTN decomposition of a ground build task against a simulated
/// copy of `world`. Compound tasks try their methods in repository order and
/// backtrack chronologically. The world is never modified.
PlanResult plan(const Task& task, const World& world, const Repository& repo);

/// Decoded arguments of a ground build task.
struct BuildArgs {
  std::string kind;
  Color color;
  std::vector<int> dims;
  Position anchor;
};
BuildArgs decode_build_task(const Task& task, const Repository& repo);

/// Applies every operator of the plan in one new instruction group and
/// registers the structure. All-or-nothing: throws Error{StalePlan} without
/// touching the world if any precondition no longer holds.
const StructureInstance& execute(const Plan& plan, World& world, InstanceRegistry& registry,
                                 const Repository& repo);

}  // namespace cobuild

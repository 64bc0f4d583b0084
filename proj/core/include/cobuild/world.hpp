// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "cobuild/types.hpp"

namespace cobuild {

using GroupId = std::uint32_t;

struct PlaceAction {
  Position pos;
  Color color;
  friend bool operator==(const PlaceAction&, const PlaceAction&) = default;
};

struct RemoveAction {
  Position pos;
  Color color;  // the color that was there
  friend bool operator==(const RemoveAction&, const RemoveAction&) = default;
};

using Action = std::variant<PlaceAction, RemoveAction>;

Action inverse(const Action& a);

struct InstructionGroup {
  GroupId id = 0;
  std::vector<Action> actions;
  bool undone = false;
};

/// Bounded voxel grid with an instruction-grouped action log.
///
/// Placement is rejected unless the target is on the ground or touches an
/// occupied 6-neighbor. Removal happens only through undo_group().
class World {
 public:
  explicit World(RegionDims dims = {});

  const RegionDims& dims() const noexcept { return dims_; }
  bool in_bounds(Position p) const noexcept;
  std::optional<Color> at(Position p) const;
  bool occupied(Position p) const { return at(p).has_value(); }
  /// Support rule evaluated against the current cells; p itself is ignored.
  bool supported(Position p) const;
  std::size_t block_count() const noexcept { return count_; }

  /// Opens a new, empty instruction group and returns its id.
  GroupId open_group();

  /// Throws Error{OutOfBounds | Occupied | Unsupported}; no mutation on error.
  void place_block(Position pos, Color color, GroupId group);

  /// Inverts the most recent non-undone group. Returns the applied inverse
  /// actions in application order. Throws Error{NothingToUndo}.
  std::vector<Action> undo_group();

  /// Id of the group undo_group() would revert next.
  std::optional<GroupId> last_live_group() const;

  BlockList snapshot() const;
  const std::vector<InstructionGroup>& log() const noexcept { return log_; }

 private:
  std::size_t index(Position p) const;
  InstructionGroup& group(GroupId id);

  RegionDims dims_;
  std::vector<std::optional<Color>> cells_;
  std::size_t count_ = 0;
  std::vector<InstructionGroup> log_;
  GroupId next_group_ = 1;
};

}  // namespace cobuild

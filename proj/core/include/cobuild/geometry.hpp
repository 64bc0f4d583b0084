// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cobuild/logic.hpp"
#include "cobuild/types.hpp"
#include "cobuild/world.hpp"

namespace cobuild {

/// Index of a primitive kind in repository order, or -1.
int primitive_index(std::string_view kind);
inline bool is_primitive(std::string_view kind) { return primitive_index(kind) >= 0; }

/// Box size (x, y, z) of a primitive with the given dims. Throws
/// Error{NonPositiveDimension} or Error{UnknownKind}.
Position primitive_box(std::string_view kind, std::span<const int> dims);

/// Cells of a primitive anchored at its minimum corner.
PositionSet primitive_extent(std::string_view kind, std::span<const int> dims, Position anchor);

/// Most specific primitive describing an axis-aligned box of the given size,
/// with its dims in schema order.
struct BoxKind {
  std::string kind;
  std::vector<int> dims;
};
BoxKind classify_box(Position size);

struct StructureInstance {
  int id = 0;
  std::string kind;
  Color color = Color::Red;
  std::vector<int> dims;
  Position anchor;
  PositionSet blocks;
  GroupId group = 0;
  bool live = true;
};

/// Indicator names a kind accepts. Learned kinds accept the box corners.
std::vector<std::string> indicator_names(std::string_view kind);

/// Indicator used when an instruction names a direction but no indicator.
std::string default_indicator(std::string_view kind, Direction dir);

/// Throws Error{InvalidIndicator}.
Position indicator(const StructureInstance& instance, std::string_view name);

/// Structures built in one session, in creation order.
class InstanceRegistry {
 public:
  const StructureInstance& add(StructureInstance instance);
  /// Marks every instance built by the group as removed.
  void retire_group(GroupId group);
  const StructureInstance* find(int id) const;
  /// Most recent live instance, optionally restricted to a kind.
  const StructureInstance* most_recent(std::optional<std::string_view> kind = {}) const;
  const std::vector<StructureInstance>& all() const noexcept { return items_; }
  int next_id() const noexcept { return next_id_; }

 private:
  std::vector<StructureInstance> items_;
  int next_id_ = 1;
};

/// Bounding-box size of cells measured from the origin.
Position extent_size(const PositionSet& shape);

/// Anchor for a structure whose cells relative to its anchor are `shape`.
/// Throws Error{NoRoom} or Error{UnknownReference}.
Position resolve_placement(const Placement& placement, const PositionSet& shape,
                           const World& world, const InstanceRegistry& registry);

}  // namespace cobuild

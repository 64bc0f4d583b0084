// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/geometry.hpp"

#include <algorithm>

#include "cobuild/error.hpp"

namespace cobuild {

namespace {

const char* const kCorners[] = {
    "bottom-left-front", "bottom-right-front", "top-left-front", "top-right-front",
    "bottom-left-back",  "bottom-right-back",  "top-left-back",  "top-right-back",
};

struct Bounds {
  Position lo, hi;
};

Bounds bounds_of(const PositionSet& cells) {
  Bounds b{*cells.begin(), *cells.begin()};
  for (const auto& p : cells) {
    b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y), std::min(b.lo.z, p.z)};
    b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y), std::max(b.hi.z, p.z)};
  }
  return b;
}

bool fits(const PositionSet& shape, Position anchor, const World& world) {
  for (const auto& c : shape) {
    Position p = c + anchor;
    if (!world.in_bounds(p) || world.occupied(p)) return false;
  }
  return true;
}

int axis(Position p, Direction d) {
  switch (d) {
    case Direction::Left:
    case Direction::Right: return p.x;
    case Direction::Up:
    case Direction::Down: return p.y;
    case Direction::Front:
    case Direction::Behind: return p.z;
  }
  return 0;
}

void set_axis(Position& p, Direction d, int v) {
  switch (d) {
    case Direction::Left:
    case Direction::Right: p.x = v; break;
    case Direction::Up:
    case Direction::Down: p.y = v; break;
    case Direction::Front:
    case Direction::Behind: p.z = v; break;
  }
}

}  // namespace

int primitive_index(std::string_view kind) {
  const auto& schemas = primitive_schemas();
  for (std::size_t i = 0; i < schemas.size(); ++i) {
    if (schemas[i].kind == kind) return static_cast<int>(i);
  }
  return -1;
}

Position primitive_box(std::string_view kind, std::span<const int> dims) {
  int idx = primitive_index(kind);
  if (idx < 0) throw Error(Errc::UnknownKind, "not a primitive: " + std::string(kind));
  if (dims.size() != primitive_schemas()[idx].params.size()) {
    throw Error(Errc::UnknownKind, "wrong number of dimensions for " + std::string(kind));
  }
  for (int d : dims) {
    if (d < 1) throw Error(Errc::NonPositiveDimension, std::string(kind) + " dimension < 1");
  }
  switch (idx) {
    case 0: return {1, 1, 1};
    case 1: return {1, dims[0], 1};
    case 2: return {dims[0], 1, 1};
    case 3: return {1, 1, dims[0]};
    case 4: return {dims[0], dims[0], 1};
    case 5: return {dims[0], dims[1], 1};
    case 6: return {dims[0], dims[0], dims[0]};
    default: return {dims[0], dims[1], dims[2]};
  }
}

PositionSet primitive_extent(std::string_view kind, std::span<const int> dims, Position anchor) {
  Position size = primitive_box(kind, dims);
  PositionSet out;
  for (int j = 0; j < size.y; ++j)
    for (int i = 0; i < size.x; ++i)
      for (int k = 0; k < size.z; ++k) out.insert(anchor + Position{i, j, k});
  return out;
}

BoxKind classify_box(Position s) {
  if (s.x == 1 && s.y == 1 && s.z == 1) return {"block", {}};
  if (s.x == 1 && s.z == 1) return {"tower", {s.y}};
  if (s.y == 1 && s.z == 1) return {"row", {s.x}};
  if (s.x == 1 && s.y == 1) return {"column", {s.z}};
  if (s.z == 1) {
    if (s.x == s.y) return {"square", {s.x}};
    return {"rectangle", {s.x, s.y}};
  }
  if (s.x == s.y && s.y == s.z) return {"cube", {s.x}};
  return {"cuboid", {s.x, s.y, s.z}};
}

std::vector<std::string> indicator_names(std::string_view kind) {
  if (kind == "block") return {"self"};
  if (kind == "tower") return {"top", "bottom"};
  if (kind == "row") return {"left-end", "right-end"};
  if (kind == "column") return {"front-end", "back-end"};
  return {std::begin(kCorners), std::end(kCorners)};
}

std::string default_indicator(std::string_view kind, Direction dir) {
  if (kind == "block") return "self";
  if (kind == "tower") return dir == Direction::Up ? "top" : "bottom";
  if (kind == "row") return dir == Direction::Right ? "right-end" : "left-end";
  if (kind == "column") return dir == Direction::Behind ? "back-end" : "front-end";
  switch (dir) {
    case Direction::Up: return "top-left-front";
    case Direction::Right: return "bottom-right-front";
    case Direction::Behind: return "bottom-left-back";
    default: return "bottom-left-front";
  }
}

Position indicator(const StructureInstance& instance, std::string_view name) {
  auto names = indicator_names(instance.kind);
  if (std::find(names.begin(), names.end(), name) == names.end() || instance.blocks.empty()) {
    throw Error(Errc::InvalidIndicator,
                "'" + std::string(name) + "' is not an indicator of a " + instance.kind);
  }
  Bounds b = bounds_of(instance.blocks);
  Position p = b.lo;
  if (name == "self" || name == "bottom" || name == "left-end" || name == "front-end") return p;
  if (name == "top") return {b.lo.x, b.hi.y, b.lo.z};
  if (name == "right-end") return {b.hi.x, b.lo.y, b.lo.z};
  if (name == "back-end") return {b.lo.x, b.lo.y, b.hi.z};
  // corner: <bottom|top>-<left|right>-<front|back>
  if (name.starts_with("top")) p.y = b.hi.y;
  if (name.find("-right-") != std::string_view::npos) p.x = b.hi.x;
  if (name.ends_with("back")) p.z = b.hi.z;
  if (!instance.blocks.count(p)) {
    throw Error(Errc::InvalidIndicator, "the " + std::string(name) + " corner of the " +
                                            instance.kind + " is empty");
  }
  return p;
}

const StructureInstance& InstanceRegistry::add(StructureInstance instance) {
  instance.id = next_id_++;
  items_.push_back(std::move(instance));
  return items_.back();
}

void InstanceRegistry::retire_group(GroupId group) {
  for (auto& s : items_) {
    if (s.group == group) s.live = false;
  }
}

const StructureInstance* InstanceRegistry::find(int id) const {
  for (const auto& s : items_) {
    if (s.id == id && s.live) return &s;
  }
  return nullptr;
}

const StructureInstance* InstanceRegistry::most_recent(std::optional<std::string_view> kind) const {
  for (auto it = items_.rbegin(); it != items_.rend(); ++it) {
    if (it->live && (!kind || it->kind == *kind)) return &*it;
  }
  return nullptr;
}

Position extent_size(const PositionSet& shape) {
  Position size{0, 0, 0};
  for (const auto& p : shape) {
    size = {std::max(size.x, p.x + 1), std::max(size.y, p.y + 1), std::max(size.z, p.z + 1)};
  }
  return size;
}

Position resolve_placement(const Placement& placement, const PositionSet& shape,
                           const World& world, const InstanceRegistry& registry) {
  if (const auto* a = std::get_if<AbsolutePlacement>(&placement)) return a->pos;

  Position size = extent_size(shape);
  if (const auto* r = std::get_if<RelativePlacement>(&placement)) {
    const StructureInstance* ref = registry.find(r->ref.id);
    if (!ref) {
      throw Error(Errc::UnknownReference,
                  "no structure " + r->ref.kind + "#" + std::to_string(r->ref.id));
    }
    Position q = indicator(*ref, r->indicator);
    Position anchor = q;
    Position dv = direction_vector(r->direction);
    int qa = axis(q, r->direction);
    bool positive = dv.x + dv.y + dv.z > 0;
    set_axis(anchor, r->direction, positive ? qa + 1 : qa - axis(size, r->direction));
    return anchor;
  }

  const RegionDims& d = world.dims();
  Position centered{(d.width - size.x) / 2, 0, (d.depth - size.z) / 2};
  if (size.x <= d.width && size.z <= d.depth && fits(shape, centered, world)) return centered;
  for (int y = 0; y < d.height; ++y)
    for (int x = 0; x < d.width; ++x)
      for (int z = 0; z < d.depth; ++z) {
        if (fits(shape, {x, y, z}, world)) return {x, y, z};
      }
  throw Error(Errc::NoRoom, "no room for the structure in the build region");
}

}  // namespace cobuild

// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/world.hpp"

#include "cobuild/error.hpp"

namespace cobuild {

Action inverse(const Action& a) {
  if (const auto* p = std::get_if<PlaceAction>(&a)) return RemoveAction{p->pos, p->color};
  const auto& r = std::get<RemoveAction>(a);
  return PlaceAction{r.pos, r.color};
}

World::World(RegionDims dims) : dims_(dims) {
  if (dims.width <= 0 || dims.height <= 0 || dims.depth <= 0) {
    throw Error(Errc::BadConfig, "region dimensions must be positive");
  }
  cells_.resize(static_cast<std::size_t>(dims.width) * dims.height * dims.depth);
}

bool World::in_bounds(Position p) const noexcept {
  return p.x >= 0 && p.x < dims_.width && p.y >= 0 && p.y < dims_.height && p.z >= 0 &&
         p.z < dims_.depth;
}

std::size_t World::index(Position p) const {
  return (static_cast<std::size_t>(p.y) * dims_.width + p.x) * dims_.depth + p.z;
}

std::optional<Color> World::at(Position p) const {
  if (!in_bounds(p)) return std::nullopt;
  return cells_[index(p)];
}

bool World::supported(Position p) const {
  if (p.y == 0) return true;
  for (Position d : kNeighborOffsets) {
    if (occupied(p + d)) return true;
  }
  return false;
}

GroupId World::open_group() {
  log_.push_back(InstructionGroup{next_group_++, {}, false});
  return log_.back().id;
}

InstructionGroup& World::group(GroupId id) {
  for (auto& g : log_) {
    if (g.id == id) {
      if (g.undone) throw Error(Errc::StalePlan, "group " + std::to_string(id) + " was undone");
      return g;
    }
  }
  throw Error(Errc::StalePlan, "no such group " + std::to_string(id));
}

void World::place_block(Position pos, Color color, GroupId group_id) {
  if (!in_bounds(pos)) throw Error(Errc::OutOfBounds, "out of bounds " + to_string(pos));
  if (occupied(pos)) throw Error(Errc::Occupied, "occupied " + to_string(pos));
  if (!supported(pos)) throw Error(Errc::Unsupported, "unsupported " + to_string(pos));
  InstructionGroup& g = group(group_id);
  cells_[index(pos)] = color;
  ++count_;
  g.actions.push_back(PlaceAction{pos, color});
}

std::optional<GroupId> World::last_live_group() const {
  for (auto it = log_.rbegin(); it != log_.rend(); ++it) {
    if (!it->undone) return it->id;
  }
  return std::nullopt;
}

std::vector<Action> World::undo_group() {
  auto it = log_.rbegin();
  while (it != log_.rend() && it->undone) ++it;
  if (it == log_.rend()) throw Error(Errc::NothingToUndo, "nothing to undo");

  std::vector<Action> applied;
  for (auto a = it->actions.rbegin(); a != it->actions.rend(); ++a) {
    Action inv = inverse(*a);
    if (const auto* r = std::get_if<RemoveAction>(&inv)) {
      cells_[index(r->pos)].reset();
      --count_;
    } else {
      const auto& p = std::get<PlaceAction>(inv);
      cells_[index(p.pos)] = p.color;
      ++count_;
    }
    applied.push_back(inv);
  }
  it->undone = true;
  return applied;
}

BlockList World::snapshot() const {
  BlockList out;
  out.reserve(count_);
  for (int y = 0; y < dims_.height; ++y) {
    for (int x = 0; x < dims_.width; ++x) {
      for (int z = 0; z < dims_.depth; ++z) {
        if (auto c = cells_[index({x, y, z})]) out.push_back({{x, y, z}, *c});
      }
    }
  }
  return out;
}

}  // namespace cobuild

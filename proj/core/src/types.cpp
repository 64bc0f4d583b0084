// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/types.hpp"

#include <deque>

namespace cobuild {

std::string_view to_string(Color c) {
  switch (c) {
    case Color::Red: return "red";
    case Color::Blue: return "blue";
    case Color::Green: return "green";
    case Color::Purple: return "purple";
    case Color::Orange: return "orange";
    case Color::Yellow: return "yellow";
  }
  return "red";
}

std::optional<Color> parse_color(std::string_view word) {
  for (Color c : kAllColors) {
    if (to_string(c) == word) return c;
  }
  return std::nullopt;
}

std::string to_string(Position p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + "," + std::to_string(p.z) + ")";
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::Front: return "front";
    case Direction::Behind: return "behind";
  }
  return "up";
}

std::optional<Direction> parse_direction(std::string_view word) {
  for (Direction d : {Direction::Left, Direction::Right, Direction::Up, Direction::Down,
                      Direction::Front, Direction::Behind}) {
    if (to_string(d) == word) return d;
  }
  return std::nullopt;
}

Position direction_vector(Direction d) {
  switch (d) {
    case Direction::Left: return {-1, 0, 0};
    case Direction::Right: return {1, 0, 0};
    case Direction::Up: return {0, 1, 0};
    case Direction::Down: return {0, -1, 0};
    case Direction::Front: return {0, 0, -1};
    case Direction::Behind: return {0, 0, 1};
  }
  return {0, 0, 0};
}

bool is_connected(const PositionSet& cells) {
  if (cells.empty()) return true;
  PositionSet seen;
  std::deque<Position> frontier{*cells.begin()};
  seen.insert(*cells.begin());
  while (!frontier.empty()) {
    Position p = frontier.front();
    frontier.pop_front();
    for (Position d : kNeighborOffsets) {
      Position q = p + d;
      if (cells.count(q) && seen.insert(q).second) frontier.push_back(q);
    }
  }
  return seen.size() == cells.size();
}

}  // namespace cobuild

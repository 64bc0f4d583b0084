// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cobuild {

/// The six block colors. There is no "none" value; absence is modelled with
/// std::optional<Color> where a slot may be missing.
enum class Color : std::uint8_t { Red, Blue, Green, Purple, Orange, Yellow };

inline constexpr std::array<Color, 6> kAllColors = {
    Color::Red, Color::Blue, Color::Green, Color::Purple, Color::Orange, Color::Yellow};

std::string_view to_string(Color c);
std::optional<Color> parse_color(std::string_view word);

/// Grid coordinate in the architect's frame: x grows to the architect's right,
/// y grows upward from the ground (y = 0), z grows away from the architect.
struct Position {
  int x = 0;
  int y = 0;
  int z = 0;

  friend constexpr auto operator<=>(const Position&, const Position&) = default;
  friend constexpr Position operator+(Position a, Position b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Position operator-(Position a, Position b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
};

std::string to_string(Position p);

/// Build order used everywhere blocks are listed: layer by layer, then left to
/// right, then front to back.
struct YxzLess {
  constexpr bool operator()(const Position& a, const Position& b) const {
    if (a.y != b.y) return a.y < b.y;
    if (a.x != b.x) return a.x < b.x;
    return a.z < b.z;
  }
};

using PositionSet = std::set<Position, YxzLess>;

struct Block {
  Position pos;
  Color color = Color::Red;

  friend bool operator==(const Block&, const Block&) = default;
};

/// A canonical block list sorted by (y, x, z).
using BlockList = std::vector<Block>;

struct RegionDims {
  int width = 11;   // x
  int height = 9;   // y
  int depth = 11;   // z

  friend bool operator==(const RegionDims&, const RegionDims&) = default;
};

enum class Direction : std::uint8_t { Left, Right, Up, Down, Front, Behind };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view word);
Position direction_vector(Direction d);

inline constexpr std::array<Position, 6> kNeighborOffsets = {
    Position{-1, 0, 0}, Position{1, 0, 0}, Position{0, -1, 0},
    Position{0, 1, 0},  Position{0, 0, -1}, Position{0, 0, 1}};

/// True when the set is 6-connected (the empty set counts as connected).
bool is_connected(const PositionSet& cells);

}  // namespace cobuild

// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/json_io.hpp"

#include <algorithm>

#include "cobuild/error.hpp"

namespace cobuild {
namespace {

Json block_json(Position p, Color c) {
  return Json{{"x", p.x}, {"y", p.y}, {"z", p.z}, {"color", std::string(to_string(c))}};
}

}  // namespace

Json blocks_to_json(const BlockList& blocks) {
  BlockList sorted = blocks;
  std::sort(sorted.begin(), sorted.end(),
            [](const Block& a, const Block& b) { return YxzLess{}(a.pos, b.pos); });
  Json out = Json::array();
  for (const auto& b : sorted) out.push_back(block_json(b.pos, b.color));
  return out;
}

BlockList blocks_from_json(const Json& j) {
  BlockList out;
  try {
    for (const auto& rec : j) {
      auto color = parse_color(rec.at("color").get<std::string>());
      if (!color) throw Error(Errc::ParseError, "unknown color " + rec.at("color").dump());
      out.push_back({{rec.at("x").get<int>(), rec.at("y").get<int>(), rec.at("z").get<int>()},
                     *color});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("bad block list: ") + e.what());
  }
  return out;
}

Json plan_to_json(const Plan& plan) {
  Json out = Json::array();
  for (const auto& op : plan.ops) {
    Json rec = {{"op", "place"}};
    rec.update(block_json(op.pos, op.color));
    out.push_back(std::move(rec));
  }
  return out;
}

Json effect_to_json(const Effect& e) {
  if (const auto* s = std::get_if<Say>(&e)) return {{"type", "say"}, {"text", s->text}};
  if (const auto* w = std::get_if<WorldChanged>(&e)) {
    return {{"type", "world"},
            {"placed", blocks_to_json(w->placed)},
            {"removed", blocks_to_json(w->removed)}};
  }
  if (const auto* r = std::get_if<RepositoryChanged>(&e)) {
    return {{"type", "repository"}, {"name", r->name}};
  }
  return {{"type", "state"}, {"state", std::string(to_string(std::get<StateChanged>(e).state))}};
}

Json effects_to_json(const std::vector<Effect>& effects) {
  Json out = Json::array();
  for (const auto& e : effects) out.push_back(effect_to_json(e));
  return out;
}

}  // namespace cobuild

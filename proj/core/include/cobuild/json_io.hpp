// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json.hpp>

#include "cobuild/dialogue.hpp"
#include "cobuild/planner.hpp"
#include "cobuild/types.hpp"

namespace cobuild {

using Json = nlohmann::json;

/// `[{"x":..,"y":..,"z":..,"color":..}]`, sorted by (y, x, z).
Json blocks_to_json(const BlockList& blocks);
/// Throws Error{ParseError}.
BlockList blocks_from_json(const Json& j);

/// `[{"op":"place","x":..,"y":..,"z":..,"color":..}]`
Json plan_to_json(const Plan& plan);

/// {"type":"say","text":..} | {"type":"world","placed":[..],"removed":[..]} |
/// {"type":"repository","name":..} | {"type":"state","state":..}
Json effect_to_json(const Effect& e);
Json effects_to_json(const std::vector<Effect>& effects);

}  // namespace cobuild

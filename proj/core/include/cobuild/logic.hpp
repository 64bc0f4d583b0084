// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cobuild/types.hpp"

namespace cobuild {

// ---------------------------------------------------------------------------
// Terms, atoms and horn clauses.

struct Constant {
  std::string symbol;
  friend bool operator==(const Constant&, const Constant&) = default;
};

struct IntConst {
  int value = 0;
  friend bool operator==(const IntConst&, const IntConst&) = default;
};

/// A variable, optionally shifted by a small integer (renders as "W−1").
struct Variable {
  std::string name;
  int shift = 0;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Ground grid position used as a task argument, e.g. build-block(blue, (2,0,2)).
struct PosConst {
  Position pos;
  friend bool operator==(const PosConst&, const PosConst&) = default;
};

using Term = std::variant<Constant, IntConst, Variable, PosConst>;

std::string render(const Term& t);
bool is_ground(const Term& t);

struct Atom {
  std::string predicate;
  std::vector<Term> args;
  friend bool operator==(const Atom&, const Atom&) = default;
};

std::string render(const Atom& a);

struct HornClause {
  Atom head;
  std::vector<Atom> body;
  /// Variables that may appear in the head without appearing in the body.
  std::vector<std::string> parameters;
};

/// "head ← b1 ∧ b2 ∧ …"
std::string render(const HornClause& c);

/// Every head variable occurs in the body or is a declared parameter.
bool well_formed(const HornClause& c);

// ---------------------------------------------------------------------------
// Slot schemas and instruction forms.

struct SlotSchema {
  std::string kind;
  std::vector<std::string> params;
  bool color_required = true;

  friend bool operator==(const SlotSchema&, const SlotSchema&) = default;
};

/// The eight built-in schemas, in repository order.
const std::vector<SlotSchema>& primitive_schemas();

struct InstanceRef {
  int id = 0;
  std::string kind;
  friend bool operator==(const InstanceRef&, const InstanceRef&) = default;
};

struct DefaultPlacement {
  friend bool operator==(const DefaultPlacement&, const DefaultPlacement&) = default;
};

struct AbsolutePlacement {
  Position pos;
  friend bool operator==(const AbsolutePlacement&, const AbsolutePlacement&) = default;
};

struct RelativePlacement {
  InstanceRef ref;
  std::string indicator;
  Direction direction = Direction::Up;
  friend bool operator==(const RelativePlacement&, const RelativePlacement&) = default;
};

using Placement = std::variant<DefaultPlacement, AbsolutePlacement, RelativePlacement>;

std::string render(const Placement& p);

/// A dimension slot; nullopt is the MISSING sentinel.
struct DimSlot {
  std::string param;
  std::optional<int> value;
  friend bool operator==(const DimSlot&, const DimSlot&) = default;
};

struct InstructionForm {
  std::string kind;
  std::optional<Color> color;  // nullopt = MISSING
  std::vector<DimSlot> dims;   // keys in schema order
  Placement placement = DefaultPlacement{};

  /// A form with every slot MISSING and default placement.
  static InstructionForm blank(const SlotSchema& schema);

  std::optional<int> dim(std::string_view param) const;
  bool set_dim(std::string_view param, int value);
  std::vector<int> dim_values() const;  // requires completeness

  friend bool operator==(const InstructionForm&, const InstructionForm&) = default;
};

/// Canonical transcript rendering: `tower(color=?, height=3, placement=default)`.
std::string render(const InstructionForm& f);

/// Missing slot names in canonical order: "color" first, then schema params.
/// Throws Error{UnknownKind} when the form does not belong to the schema.
std::vector<std::string> check_completeness(const InstructionForm& form,
                                            const SlotSchema& schema);

// ---------------------------------------------------------------------------
// HTN tasks.

inline constexpr std::string_view kDefaultAnchor = "DEFAULT_ANCHOR";
inline constexpr std::string_view kBuildPrefix = "build-";
inline constexpr std::string_view kPlaceBlock = "place-block";

struct Task {
  std::string name;
  std::vector<Term> args;
  friend bool operator==(const Task&, const Task&) = default;
};

std::string render(const Task& t);

/// build-<kind>(color, dims…, anchor). The anchor argument is a position for
/// absolute placement and a placeholder constant otherwise.
/// Throws Error{IncompleteForm}.
Task to_htn_task(const InstructionForm& form);

/// Replaces the anchor placeholder of a build task with a ground position.
Task bind_anchor(Task task, Position anchor);

/// Kind named by a build-<kind> task, or empty for other tasks.
std::string task_kind(const Task& t);

}  // namespace cobuild

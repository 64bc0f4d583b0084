// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cobuild/geometry.hpp"
#include "cobuild/grammar.hpp"
#include "cobuild/logic.hpp"
#include "cobuild/types.hpp"

namespace cobuild {

class Repository;

enum class DialogueTag {
  AwaitingInstruction,
  AwaitingSlot,
  OfferingSave,
  AwaitingName,
  AwaitingDims,
  AwaitingQueryAnswer,
  SessionEnded,
};

/// "awaiting-instruction", "awaiting-slot", "offering-save", "awaiting-name",
/// "awaiting-dims", "awaiting-query", "session-ended".
std::string_view to_string(DialogueTag t);
std::optional<DialogueTag> parse_dialogue_tag(std::string_view s);

struct Referent {
  int id = 0;
  std::string kind;
  Color color = Color::Red;
};

struct ParseContext {
  DialogueTag state = DialogueTag::AwaitingInstruction;
  std::optional<std::string> pending_slot;  // set iff state == AwaitingSlot
  std::vector<Referent> referents;          // live instances, oldest first
  std::vector<SlotSchema> schemas = primitive_schemas();

  static ParseContext from(DialogueTag state, std::optional<std::string> pending_slot,
                           const InstanceRegistry& registry, const Repository& repo);
};

struct BuildInstruction {
  InstructionForm form;
  friend bool operator==(const BuildInstruction&, const BuildInstruction&) = default;
};
struct UndoCommand {
  friend bool operator==(const UndoCommand&, const UndoCommand&) = default;
};
struct SaveAccept {
  friend bool operator==(const SaveAccept&, const SaveAccept&) = default;
};
struct SaveDecline {
  friend bool operator==(const SaveDecline&, const SaveDecline&) = default;
};
struct NameDeclaration {
  std::string name;
  friend bool operator==(const NameDeclaration&, const NameDeclaration&) = default;
};
struct DimensionDeclaration {
  std::vector<std::pair<std::string, int>> dims;  // in the order given
  friend bool operator==(const DimensionDeclaration&, const DimensionDeclaration&) = default;
};
struct YesNoAnswer {
  bool yes = false;
  friend bool operator==(const YesNoAnswer&, const YesNoAnswer&) = default;
};
struct SlotAnswer {
  std::string slot;
  std::variant<int, Color> value;
  friend bool operator==(const SlotAnswer&, const SlotAnswer&) = default;
};
struct Greeting {
  friend bool operator==(const Greeting&, const Greeting&) = default;
};
struct Goodbye {
  friend bool operator==(const Goodbye&, const Goodbye&) = default;
};
struct Cancel {
  friend bool operator==(const Cancel&, const Cancel&) = default;
};
struct Unknown {
  std::string text;
  /// Reply key explaining a failed resolution, or empty.
  std::string hint;
  friend bool operator==(const Unknown&, const Unknown&) = default;
};

using ParsedMessage =
    std::variant<BuildInstruction, UndoCommand, SaveAccept, SaveDecline, NameDeclaration,
                 DimensionDeclaration, YesNoAnswer, SlotAnswer, Greeting, Goodbye, Cancel, Unknown>;

/// Canonical text: `tower(color=red, height=?, placement=default)`, `undo`,
/// `save-accept`, `name(l)`, `dims(height=3, width=3)`, `yes`, `answer(height=3)`,
/// `greeting`, `unknown`, ...
std::string render(const ParsedMessage& m);

ParsedMessage parse(std::string_view utterance, const ParseContext& ctx,
                    const Grammar& grammar = Grammar::builtin());

/// An utterance the grammar maps back to `form`. Relative placements name the
/// referent by kind. Throws Error{IncompleteForm}.
std::string render_canonical(const InstructionForm& form);

/// Every word the parser can recognise in the given context.
std::vector<std::string> lexicon(const ParseContext& ctx, const Grammar& grammar = Grammar::builtin());

}  // namespace cobuild

// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cobuild/geometry.hpp"
#include "cobuild/grammar.hpp"
#include "cobuild/induction.hpp"
#include "cobuild/parser.hpp"
#include "cobuild/replies.hpp"
#include "cobuild/repository.hpp"
#include "cobuild/world.hpp"

namespace cobuild {

struct Say {
  std::string text;
  friend bool operator==(const Say&, const Say&) = default;
};
struct WorldChanged {
  BlockList placed;
  BlockList removed;
  friend bool operator==(const WorldChanged&, const WorldChanged&) = default;
};
struct RepositoryChanged {
  std::string name;
  friend bool operator==(const RepositoryChanged&, const RepositoryChanged&) = default;
};
struct StateChanged {
  DialogueTag state;
  friend bool operator==(const StateChanged&, const StateChanged&) = default;
};

using Effect = std::variant<Say, WorldChanged, RepositoryChanged, StateChanged>;

struct Turn {
  ParsedMessage message;
  std::vector<Effect> effects;
};

/// Builder side of one session. Owns the conversation state; the world and
/// instance registry belong to the caller.
class Dialogue {
 public:
  Dialogue(World& world, InstanceRegistry& registry, const Replies& replies = Replies::builtin(),
           const Grammar& grammar = Grammar::builtin());
  ~Dialogue();
  Dialogue(const Dialogue&) = delete;
  Dialogue& operator=(const Dialogue&) = delete;

  /// Throws Error{SessionStarted} on a second call.
  std::vector<Effect> greet();

  /// Parses and answers one architect message. Learned concepts are appended
  /// to `repo`. Never throws for conversational failures.
  Turn handle_message(std::string_view utterance, Repository& repo);

  DialogueTag state() const noexcept { return tag_; }
  bool started() const noexcept { return started_; }
  /// Slot asked about in AwaitingSlot.
  std::optional<std::string> pending_slot() const;
  /// Form being completed in AwaitingSlot.
  const std::optional<InstructionForm>& pending_form() const noexcept { return form_; }
  /// Name being learned in AwaitingDims / AwaitingQueryAnswer.
  const std::string& pending_name() const noexcept { return name_; }
  const InductionEpisode* episode() const noexcept { return episode_.get(); }
  ParseContext context(const Repository& repo) const;

 private:
  void set_state(DialogueTag t);
  void say(std::string text);
  std::string question() const;

  void on_build(InstructionForm form, const Repository& repo);
  void on_slot_answer(const SlotAnswer& a, const Repository& repo);
  void on_undo();
  void on_dims(const DimensionDeclaration& d, Repository& repo);
  void on_yes_no(bool yes, Repository& repo);
  void on_unknown(const Unknown& u);
  void ask_or_execute(const Repository& repo);
  void execute_form(const InstructionForm& form, const Repository& repo);
  void finish_learning(Repository& repo);
  void reset();

  World& world_;
  InstanceRegistry& registry_;
  const Replies& replies_;
  const Grammar& grammar_;
  bool started_ = false;
  DialogueTag tag_ = DialogueTag::AwaitingInstruction;
  std::optional<InstructionForm> form_;
  std::string slot_;
  std::string name_;
  BlockList training_;
  std::unique_ptr<InductionEpisode> episode_;
  std::vector<Effect> effects_;
};

/// "the red tower of height 3"
std::string describe(const InstructionForm& form);

}  // namespace cobuild

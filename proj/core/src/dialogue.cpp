// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/dialogue.hpp"

#include <algorithm>

#include "cobuild/error.hpp"
#include "cobuild/planner.hpp"

namespace cobuild {
namespace {

std::string failure_key(FailureReason r) {
  switch (r) {
    case FailureReason::OutOfBounds: return "cannot-build.out-of-bounds";
    case FailureReason::Collision: return "cannot-build.collision";
    case FailureReason::Unsupported: return "cannot-build.unsupported";
    case FailureReason::NoMethod: return "cannot-build.no-method";
  }
  return "cannot-build.no-method";
}

}  // namespace

std::string describe(const InstructionForm& form) {
  std::string s = "the ";
  if (form.color) s += std::string(to_string(*form.color)) + " ";
  s += form.kind;
  bool first = true;
  for (const auto& d : form.dims) {
    if (!d.value) continue;
    s += (first ? " of " : " and ") + d.param + " " + std::to_string(*d.value);
    first = false;
  }
  return s;
}

Dialogue::Dialogue(World& world, InstanceRegistry& registry, const Replies& replies,
                   const Grammar& grammar)
    : world_(world), registry_(registry), replies_(replies), grammar_(grammar) {}

Dialogue::~Dialogue() = default;

std::vector<Effect> Dialogue::greet() {
  if (started_) throw Error(Errc::SessionStarted, "session already started");
  started_ = true;
  tag_ = DialogueTag::AwaitingInstruction;
  return {Say{replies_.format("greeting")}, StateChanged{tag_}};
}

std::optional<std::string> Dialogue::pending_slot() const {
  if (tag_ != DialogueTag::AwaitingSlot) return std::nullopt;
  return slot_;
}

ParseContext Dialogue::context(const Repository& repo) const {
  return ParseContext::from(tag_, pending_slot(), registry_, repo);
}

void Dialogue::set_state(DialogueTag t) { tag_ = t; }

void Dialogue::say(std::string text) { effects_.push_back(Say{std::move(text)}); }

void Dialogue::reset() {
  form_.reset();
  slot_.clear();
  name_.clear();
  training_.clear();
  episode_.reset();
}

std::string Dialogue::question() const {
  switch (tag_) {
    case DialogueTag::AwaitingSlot: {
      std::string key = "ask." + slot_;
      if (!replies_.has(key)) key = "ask.param";
      return replies_.format(key, {{"kind", form_->kind}, {"param", slot_}});
    }
    case DialogueTag::OfferingSave: return replies_.format("offer-save");
    case DialogueTag::AwaitingName: return replies_.format("ask-name");
    case DialogueTag::AwaitingDims: return replies_.format("ask-dims", {{"name", name_}});
    case DialogueTag::AwaitingQueryAnswer: return episode_->pending()->text;
    default: return {};
  }
}

Turn Dialogue::handle_message(std::string_view utterance, Repository& repo) {
  effects_.clear();
  ParsedMessage msg = parse(utterance, context(repo), grammar_);
  const DialogueTag before = tag_;

  started_ = true;
  if (before == DialogueTag::SessionEnded) {
    if (std::holds_alternative<Greeting>(msg)) {
      set_state(DialogueTag::AwaitingInstruction);
      say(replies_.format("greeting.again") + " " + replies_.format("greeting.prompt"));
    } else {
      say(replies_.format("session-ended"));
    }
    if (tag_ != before) effects_.push_back(StateChanged{tag_});
    return {std::move(msg), std::move(effects_)};
  }

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BuildInstruction>) {
          on_build(m.form, repo);
        } else if constexpr (std::is_same_v<T, SlotAnswer>) {
          on_slot_answer(m, repo);
        } else if constexpr (std::is_same_v<T, UndoCommand>) {
          on_undo();
        } else if constexpr (std::is_same_v<T, SaveAccept>) {
          if (world_.block_count() == 0) {
            set_state(DialogueTag::AwaitingInstruction);
            say(replies_.format("nothing-to-remember"));
          } else {
            training_ = world_.snapshot();
            set_state(DialogueTag::AwaitingName);
            say(replies_.format("ask-name"));
          }
        } else if constexpr (std::is_same_v<T, SaveDecline>) {
          reset();
          set_state(DialogueTag::AwaitingInstruction);
          say(replies_.format("declined"));
        } else if constexpr (std::is_same_v<T, NameDeclaration>) {
          if (repo.contains(m.name)) {
            say(replies_.format("name-taken", {{"name", m.name}}));
          } else {
            name_ = m.name;
            set_state(DialogueTag::AwaitingDims);
            say(replies_.format("ask-dims", {{"name", name_}}));
          }
        } else if constexpr (std::is_same_v<T, DimensionDeclaration>) {
          on_dims(m, repo);
        } else if constexpr (std::is_same_v<T, YesNoAnswer>) {
          on_yes_no(m.yes, repo);
        } else if constexpr (std::is_same_v<T, Greeting>) {
          std::string q = question();
          say(replies_.format("greeting.again") + " " +
              (q.empty() ? replies_.format("greeting.prompt") : q));
        } else if constexpr (std::is_same_v<T, Goodbye>) {
          reset();
          set_state(DialogueTag::SessionEnded);
          say(replies_.format("bye"));
        } else if constexpr (std::is_same_v<T, Cancel>) {
          reset();
          set_state(DialogueTag::AwaitingInstruction);
          say(replies_.format("cancelled"));
        } else {
          on_unknown(m);
        }
      },
      msg);
  if (tag_ != before) effects_.push_back(StateChanged{tag_});
  return {std::move(msg), std::move(effects_)};
}

void Dialogue::on_build(InstructionForm form, const Repository& repo) {
  reset();
  form_ = std::move(form);
  ask_or_execute(repo);
}

void Dialogue::ask_or_execute(const Repository& repo) {
  std::vector<std::string> missing;
  try {
    missing = check_completeness(*form_, repo);
  } catch (const Error&) {
    reset();
    set_state(DialogueTag::AwaitingInstruction);
    say(replies_.format("reprompt"));
    return;
  }
  if (!missing.empty()) {
    slot_ = missing.front();
    set_state(DialogueTag::AwaitingSlot);
    say(question());
    return;
  }
  InstructionForm form = std::move(*form_);
  reset();
  execute_form(form, repo);
}

void Dialogue::execute_form(const InstructionForm& form, const Repository& repo) {
  auto fail = [&](std::string text) {
    set_state(DialogueTag::AwaitingInstruction);
    say(std::move(text));
  };
  Position anchor;
  try {
    PositionSet shape = repo.extent(form.kind, form.dim_values(), {0, 0, 0});
    if (shape.empty()) return fail(replies_.format("bad-dimension"));
    anchor = resolve_placement(form.placement, shape, world_, registry_);
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::NoRoom: return fail(replies_.format("no-room", {{"kind", form.kind}}));
      case Errc::UnknownReference: return fail(replies_.format("unknown-reference"));
      case Errc::InvalidIndicator:
        if (const auto* r = std::get_if<RelativePlacement>(&form.placement)) {
          return fail(replies_.format("invalid-indicator", {{"kind", r->ref.kind}}));
        }
        return fail(replies_.format("unknown-reference"));
      default: return fail(replies_.format("bad-dimension"));
    }
  }
  PlanResult result = plan(bind_anchor(to_htn_task(form), anchor), world_, repo);
  if (const auto* f = std::get_if<PlanFailure>(&result)) {
    return fail(replies_.format(failure_key(f->reason),
                                {{"pos", to_string(f->pos)}, {"kind", form.kind}}));
  }
  const Plan& p = std::get<Plan>(result);
  execute(p, world_, registry_, repo);
  WorldChanged changed;
  for (const auto& op : p.ops) changed.placed.push_back({op.pos, op.color});
  effects_.push_back(std::move(changed));
  set_state(DialogueTag::OfferingSave);
  say(replies_.format("built", {{"description", describe(form)}}) + " " +
      replies_.format("offer-save"));
}

void Dialogue::on_slot_answer(const SlotAnswer& a, const Repository& repo) {
  if (tag_ != DialogueTag::AwaitingSlot || !form_) {
    on_unknown(Unknown{});
    return;
  }
  bool ok = false;
  if (const Color* c = std::get_if<Color>(&a.value)) {
    if (a.slot == "color") {
      form_->color = *c;
      ok = true;
    }
  } else {
    int v = std::get<int>(a.value);
    if (form_->set_dim(a.slot, v)) {
      ok = true;
    } else if (form_->dims.size() == 1) {
      form_->dims.front().value = v;
      ok = true;
    }
  }
  if (!ok) {
    say(replies_.format("reprompt.slot", {{"question", question()}}));
    return;
  }
  ask_or_execute(repo);
}

void Dialogue::on_undo() {
  reset();
  try {
    auto actions = world_.undo_group();
    WorldChanged changed;
    for (const auto& a : actions) {
      if (const auto* r = std::get_if<RemoveAction>(&a)) changed.removed.push_back({r->pos, r->color});
      if (const auto* p = std::get_if<PlaceAction>(&a)) changed.placed.push_back({p->pos, p->color});
    }
    effects_.push_back(std::move(changed));
    say(replies_.format("undone"));
  } catch (const Error&) {
    say(replies_.format("nothing-to-undo"));
  }
  // Instances built by undone groups are no longer valid referents.
  std::vector<GroupId> dead;
  for (const auto& inst : registry_.all()) {
    if (!inst.live) continue;
    const auto& log = world_.log();
    auto g = std::find_if(log.begin(), log.end(),
                          [&](const InstructionGroup& grp) { return grp.id == inst.group; });
    if (g != log.end() && g->undone) dead.push_back(inst.group);
  }
  for (GroupId g : dead) registry_.retire_group(g);
  set_state(DialogueTag::AwaitingInstruction);
}

void Dialogue::on_dims(const DimensionDeclaration& d, Repository& repo) {
  TrainingInstance instance{name_, training_, d.dims};
  try {
    episode_ = std::make_unique<InductionEpisode>(std::move(instance), replies_);
  } catch (const Error& e) {
    std::string name = name_;
    reset();
    set_state(DialogueTag::AwaitingInstruction);
    say(replies_.format("induction-failed", {{"name", name}, {"reason", e.what()}}));
    return;
  }
  if (episode_->done()) {
    finish_learning(repo);
    return;
  }
  set_state(DialogueTag::AwaitingQueryAnswer);
  say(episode_->pending()->text);
}

void Dialogue::on_yes_no(bool yes, Repository& repo) {
  if (!episode_ || episode_->done()) {
    on_unknown(Unknown{});
    return;
  }
  std::string prefix;
  if (episode_->answer(yes) == InductionEpisode::AnswerOutcome::Contradiction) {
    prefix = replies_.format("contradiction") + " ";
  }
  if (episode_->done()) {
    if (!prefix.empty()) say(prefix.substr(0, prefix.size() - 1));
    finish_learning(repo);
    return;
  }
  say(prefix + episode_->pending()->text);
}

void Dialogue::finish_learning(Repository& repo) {
  ConceptDefinition def = episode_->definition();
  std::string name = def.name;
  std::string explanation = def.explanation;
  try {
    repo.add(std::move(def));
  } catch (const Error& e) {
    reset();
    set_state(DialogueTag::AwaitingInstruction);
    say(replies_.format("induction-failed", {{"name", name}, {"reason", e.what()}}));
    return;
  }
  reset();
  effects_.push_back(RepositoryChanged{name});
  say(replies_.format("learned", {{"name", name}}));
  say(explanation);
  set_state(DialogueTag::AwaitingInstruction);
}

void Dialogue::on_unknown(const Unknown& u) {
  switch (tag_) {
    case DialogueTag::AwaitingSlot:
      say(replies_.format("reprompt.slot", {{"question", question()}}));
      return;
    case DialogueTag::OfferingSave:
    case DialogueTag::AwaitingQueryAnswer:
      say(replies_.format("reprompt.yesno", {{"question", question()}}));
      return;
    case DialogueTag::AwaitingName: say(replies_.format("reprompt.name")); return;
    case DialogueTag::AwaitingDims: say(replies_.format("reprompt.dims")); return;
    default: break;
  }
  if (!u.hint.empty() && replies_.has(u.hint)) {
    say(replies_.format(u.hint, {{"kind", "structure"}}));
  } else {
    say(replies_.format("reprompt"));
  }
}

}  // namespace cobuild

// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>

#include "cobuild/dialogue.hpp"
#include "cobuild/error.hpp"

namespace cobuild {
namespace {

std::vector<std::string> says(const std::vector<Effect>& effects) {
  std::vector<std::string> out;
  for (const auto& e : effects) {
    if (const auto* s = std::get_if<Say>(&e)) out.push_back(s->text);
  }
  return out;
}

std::string joined(const std::vector<Effect>& effects) {
  std::string out;
  for (const auto& s : says(effects)) out += s + "\n";
  return out;
}

bool contains(const std::string& haystack, std::string_view needle) {
  return haystack.find(needle) != std::string::npos;
}

struct Harness {
  World world;
  InstanceRegistry registry;
  Repository repo;
  Dialogue dialogue{world, registry};

  Harness() { dialogue.greet(); }
  Turn send(std::string_view text) { return dialogue.handle_message(text, repo); }
};

TEST(Dialogue, GreetsOnce) {
  World world;
  InstanceRegistry registry;
  Dialogue d(world, registry);
  EXPECT_FALSE(d.started());
  auto effects = d.greet();
  ASSERT_EQ(effects.size(), 2u);
  EXPECT_EQ(std::get<Say>(effects[0]).text, "Hi! What should we build today?");
  EXPECT_EQ(std::get<StateChanged>(effects[1]).state, DialogueTag::AwaitingInstruction);
  EXPECT_THROW(d.greet(), Error);
}

TEST(Dialogue, FigureOneFlow) {
  Harness h;
  auto t1 = h.send("build a red tower");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingSlot);
  EXPECT_EQ(h.dialogue.pending_slot(), "height");
  std::string ask = joined(t1.effects);
  EXPECT_TRUE(contains(ask, "tall") || contains(ask, "size")) << ask;
  EXPECT_EQ(h.world.block_count(), 0u);
  EXPECT_EQ(t1.effects.back(), Effect(StateChanged{DialogueTag::AwaitingSlot}));

  auto t2 = h.send("3");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::OfferingSave);
  EXPECT_TRUE(contains(joined(t2.effects), "Do you want me to remember this structure?"));
  BlockList expected = {{{5, 0, 5}, Color::Red}, {{5, 1, 5}, Color::Red}, {{5, 2, 5}, Color::Red}};
  EXPECT_EQ(h.world.snapshot(), expected);
  auto changed = std::find_if(t2.effects.begin(), t2.effects.end(), [](const Effect& e) {
    return std::holds_alternative<WorldChanged>(e);
  });
  ASSERT_NE(changed, t2.effects.end());
  EXPECT_EQ(std::get<WorldChanged>(*changed).placed, expected);

  auto t3 = h.send("no");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingInstruction);
  EXPECT_EQ(h.repo, Repository{});
  EXPECT_EQ(h.world.snapshot(), expected);  // declining keeps the blocks
  EXPECT_TRUE(contains(joined(t3.effects), "won't remember"));
}

TEST(Dialogue, AsksOneSlotPerTurnInCanonicalOrder) {
  Harness h;
  h.send("build a cuboid");
  EXPECT_EQ(h.dialogue.pending_slot(), "color");
  auto t = h.send("blue");
  EXPECT_EQ(says(t.effects).size(), 1u);
  EXPECT_EQ(h.dialogue.pending_slot(), "width");
  h.send("2");
  EXPECT_EQ(h.dialogue.pending_slot(), "height");
  h.send("length 4");  // an answer naming another open slot fills that slot
  EXPECT_EQ(h.dialogue.pending_slot(), "height");
  h.send("3");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::OfferingSave);
  EXPECT_EQ(h.world.block_count(), 2u * 3u * 4u);
}

TEST(Dialogue, UnknownRepromptsWithoutChangingState) {
  Harness h;
  h.send("build a red tower");
  auto t = h.send("banana split");
  EXPECT_TRUE(std::holds_alternative<Unknown>(t.message));
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingSlot);
  EXPECT_TRUE(contains(joined(t.effects), "How tall"));
  EXPECT_EQ(t.effects.size(), 1u);

  Harness idle;
  auto u = idle.send("sing a song");
  EXPECT_EQ(idle.dialogue.state(), DialogueTag::AwaitingInstruction);
  EXPECT_TRUE(contains(joined(u.effects), "did not understand"));
}

TEST(Dialogue, PlanFailureExplainsAndKeepsWorld) {
  Harness h;
  auto t = h.send("build a red block at 5 3 5");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingInstruction);
  EXPECT_TRUE(contains(joined(t.effects), "can't build that there, nothing supports it"));
  EXPECT_EQ(h.world.block_count(), 0u);
  auto o = h.send("build a red row of width 3 at 9 0 0");
  EXPECT_TRUE(contains(joined(o.effects), "stick out"));
  EXPECT_EQ(h.world.block_count(), 0u);
}

TEST(Dialogue, UndoRemovesLastInstructionAndItsReferent) {
  Harness h;
  EXPECT_TRUE(contains(joined(h.send("undo").effects), "nothing to undo"));
  h.send("build a red tower of height 2");
  h.send("no");
  auto after_first = h.world.snapshot();
  h.send("build a blue block on top of it");
  EXPECT_EQ(h.world.block_count(), 3u);
  EXPECT_EQ(h.world.at({5, 2, 5}), Color::Blue);
  auto t = h.send("undo");
  EXPECT_EQ(h.world.snapshot(), after_first);
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingInstruction);
  const auto& removed = std::get<WorldChanged>(t.effects.front()).removed;
  EXPECT_EQ(removed, (BlockList{{{5, 2, 5}, Color::Blue}}));
  // "it" now refers to the tower again.
  EXPECT_EQ(h.registry.most_recent()->kind, "tower");
  h.send("undo");
  EXPECT_EQ(h.world.block_count(), 0u);
  auto r = h.send("build a blue block on top of it");
  EXPECT_TRUE(contains(joined(r.effects), "don't know which structure"));
}

TEST(Dialogue, UndoWorksMidConversation) {
  Harness h;
  h.send("build a red tower of height 2");
  h.send("build a row");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingSlot);
  h.send("undo");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingInstruction);
  EXPECT_EQ(h.world.block_count(), 0u);
  EXPECT_FALSE(h.dialogue.pending_form().has_value());
}

TEST(Dialogue, LearnsAndReusesAConcept) {
  Harness h;
  h.send("build a red tower of height 3");
  h.send("no");
  h.send("build a red row of width 2 to the right of the tower");
  h.send("yes");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingName);
  h.send("call it l");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingDims);
  EXPECT_EQ(h.dialogue.pending_name(), "l");
  auto q = h.send("its height is 3 and its width is 3");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingQueryAnswer);
  ASSERT_NE(h.dialogue.episode(), nullptr);
  // Truthful answers for an L made of a tower of height H and W-1 more blocks.
  int queries = 0;
  Turn last = q;
  while (h.dialogue.state() == DialogueTag::AwaitingQueryAnswer) {
    const auto& pending = h.dialogue.episode()->pending();
    ASSERT_TRUE(pending.has_value());
    const auto& v = pending->valuation;
    bool truth = static_cast<std::size_t>(v.at("height") + v.at("width") - 1) == pending->predicted_count;
    last = h.send(truth ? "yes" : "no");
    ++queries;
    ASSERT_LE(queries, 5);
  }
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingInstruction);
  EXPECT_EQ(last.effects.front(), Effect(RepositoryChanged{"l"}));
  auto text = says(last.effects);
  ASSERT_EQ(text.size(), 2u);
  EXPECT_TRUE(text[1].starts_with("IF")) << text[1];
  ASSERT_TRUE(h.repo.contains("l"));

  h.send("undo");
  h.send("undo");
  auto b = h.send("build a green l with height 4 and width 3");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::OfferingSave) << joined(b.effects);
  PositionSet cells;
  for (const auto& blk : h.world.snapshot()) {
    EXPECT_EQ(blk.color, Color::Green);
    cells.insert(blk.pos);
  }
  EXPECT_EQ(cells.size(), 6u);

  h.send("no");
  h.send("build a blue block at 0 0 0");
  h.send("yes");
  auto n = h.send("call it tower");
  EXPECT_TRUE(contains(joined(n.effects), "already know"));
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingName);
}

TEST(Dialogue, SessionEndAndRestart) {
  Harness h;
  h.send("bye");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::SessionEnded);
  auto t = h.send("build a red block");
  EXPECT_TRUE(contains(joined(t.effects), "ended"));
  EXPECT_EQ(h.world.block_count(), 0u);
  h.send("hello");
  EXPECT_EQ(h.dialogue.state(), DialogueTag::AwaitingInstruction);
}

// A scripted architect that always moves the conversation forward.
std::string scripted_reply(const Dialogue& d) {
  switch (d.state()) {
    case DialogueTag::AwaitingSlot: return *d.pending_slot() == "color" ? "red" : "2";
    case DialogueTag::OfferingSave: return "no";
    case DialogueTag::AwaitingName: return "call it thing";
    case DialogueTag::AwaitingDims: return "its height is 2";
    case DialogueTag::AwaitingQueryAnswer: return "yes";
    case DialogueTag::SessionEnded: return "hello";
    default: return "";
  }
}

const std::vector<std::string> kVocabulary = {
    "build a red tower", "build a red tower of height 3", "build a cube", "build a blue block on top of it", "3", "red", "yes",
    "no", "undo", "call it thing", "its height is 2", "hello", "bye", "never mind", "gibberish"};

struct Replay {
  Harness h;
  bool ok = true;
  std::string trace;

  void step(const std::string& text) {
    auto before = h.world.snapshot();
    auto tag = h.dialogue.state();
    auto t = h.send(text);
    trace += " | " + text;
    auto sayings = says(t.effects);
    // Every message gets an answer, and never more than one question.
    if (sayings.empty()) ok = false;
    int questions = 0;
    for (const auto& s : sayings) questions += s.ends_with("?");
    if (questions > 1) ok = false;
    // A StateChanged effect is emitted exactly when the state changes.
    int changes = 0;
    for (const auto& e : t.effects) changes += std::holds_alternative<StateChanged>(e);
    if (changes != (tag != h.dialogue.state() ? 1 : 0)) ok = false;
    // The world changes only on a completed instruction or an undo.
    if (h.world.snapshot() != before &&
        !std::holds_alternative<BuildInstruction>(t.message) &&
        !std::holds_alternative<SlotAnswer>(t.message) &&
        !std::holds_alternative<UndoCommand>(t.message)) {
      ok = false;
    }
  }
};

TEST(Dialogue, ExhaustiveWalkHasNoDeadStates) {
  const std::size_t n = kVocabulary.size();
  std::set<DialogueTag> seen;
  for (std::size_t code = 0; code < n * n * n; ++code) {
    Replay r;
    for (std::size_t c = code, i = 0; i < 3; ++i, c /= n) {
      r.step(kVocabulary[c % n]);
      seen.insert(r.h.dialogue.state());
    }
    for (int i = 0; i < 12 && r.h.dialogue.state() != DialogueTag::AwaitingInstruction; ++i) {
      r.step(scripted_reply(r.h.dialogue));
      seen.insert(r.h.dialogue.state());
    }
    ASSERT_TRUE(r.ok) << r.trace;
    ASSERT_EQ(r.h.dialogue.state(), DialogueTag::AwaitingInstruction) << r.trace;
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Dialogue, DescribeForm) {
  auto f = InstructionForm::blank(primitive_schemas()[5]);
  f.color = Color::Purple;
  f.set_dim("width", 2);
  f.set_dim("height", 3);
  EXPECT_EQ(describe(f), "the purple rectangle of width 2 and height 3");
}

}  // namespace
}  // namespace cobuild

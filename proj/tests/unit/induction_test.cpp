// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "cobuild/error.hpp"
#include "cobuild/geometry.hpp"
#include "cobuild/induction.hpp"
#include "ground_truth.hpp"

namespace cobuild {
namespace {

BlockList red(const PositionSet& cells) {
  BlockList out;
  for (const auto& p : cells) out.push_back({p, Color::Red});
  return out;
}

const BlockList kL = red({{0, 0, 0}, {0, 1, 0}, {0, 2, 0}, {1, 0, 0}, {2, 0, 0}});

using BoxKey = std::tuple<std::string, std::vector<int>, Position>;
using CoverKey = std::set<BoxKey>;

// Every minimum exact cover found by trying all subsets of candidate boxes
// in increasing size.
std::set<CoverKey> exhaustive_covers(const BlockList& blocks) {
  std::map<Position, Color> cell;
  Position lo{100, 100, 100}, hi{-100, -100, -100};
  for (const auto& b : blocks) {
    cell[b.pos] = b.color;
    lo = {std::min(lo.x, b.pos.x), std::min(lo.y, b.pos.y), std::min(lo.z, b.pos.z)};
    hi = {std::max(hi.x, b.pos.x), std::max(hi.y, b.pos.y), std::max(hi.z, b.pos.z)};
  }
  struct Box {
    BoxKey key;
    std::set<Position> cells;
  };
  std::vector<Box> boxes;
  for (int x0 = lo.x; x0 <= hi.x; ++x0)
    for (int y0 = lo.y; y0 <= hi.y; ++y0)
      for (int z0 = lo.z; z0 <= hi.z; ++z0)
        for (int x1 = x0; x1 <= hi.x; ++x1)
          for (int y1 = y0; y1 <= hi.y; ++y1)
            for (int z1 = z0; z1 <= hi.z; ++z1) {
              Box b;
              bool ok = true;
              std::optional<Color> color;
              for (int x = x0; x <= x1 && ok; ++x)
                for (int y = y0; y <= y1 && ok; ++y)
                  for (int z = z0; z <= z1 && ok; ++z) {
                    auto it = cell.find({x, y, z});
                    if (it == cell.end() || (color && *color != it->second)) ok = false;
                    if (ok) color = it->second;
                    b.cells.insert({x, y, z});
                  }
              if (!ok) continue;
              auto kind = classify_box({x1 - x0 + 1, y1 - y0 + 1, z1 - z0 + 1});
              b.key = {kind.kind, kind.dims, {x0, y0, z0}};
              boxes.push_back(std::move(b));
            }
  std::set<CoverKey> found;
  std::size_t n = boxes.size();
  for (std::size_t k = 1; k <= blocks.size() && found.empty(); ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::set<Position> covered;
      std::size_t total = 0;
      CoverKey key;
      for (std::size_t i = 0; i < n; ++i) {
        if (!pick[i]) continue;
        covered.insert(boxes[i].cells.begin(), boxes[i].cells.end());
        total += boxes[i].cells.size();
        key.insert(boxes[i].key);
      }
      if (total == blocks.size() && covered.size() == blocks.size()) found.insert(key);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return found;
}

std::set<CoverKey> keys(const std::vector<Cover>& covers) {
  std::set<CoverKey> out;
  for (const auto& c : covers) {
    CoverKey k;
    for (const auto& p : c) k.insert({p.kind, p.dims, p.anchor});
    out.insert(k);
  }
  return out;
}

TEST(Decompose, LShapeHasTwoMinimalCovers) {
  auto covers = decompose(kL);
  ASSERT_EQ(covers.size(), 2u);
  std::set<CoverKey> expected = {
      {{"tower", {3}, {0, 0, 0}}, {"row", {2}, {1, 0, 0}}},
      {{"tower", {2}, {0, 1, 0}}, {"row", {3}, {0, 0, 0}}}};
  EXPECT_EQ(keys(covers), expected);
  EXPECT_EQ(keys(covers), exhaustive_covers(kL));
}

TEST(Decompose, MatchesExhaustiveOracleOnRandomShapes) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    PositionSet cells{{0, 0, 0}};
    std::map<Position, Color> colors{{{0, 0, 0}, Color::Red}};
    int n = 2 + static_cast<int>(rng() % 6);
    while (static_cast<int>(cells.size()) < n) {
      auto it = cells.begin();
      std::advance(it, rng() % cells.size());
      Position p = *it + kNeighborOffsets[rng() % 6];
      if (p.x < 0 || p.y < 0 || p.z < 0 || p.x > 2 || p.y > 2 || p.z > 1) continue;
      cells.insert(p);
      colors[p] = rng() % 4 == 0 ? Color::Blue : Color::Red;
    }
    BlockList blocks;
    for (const auto& p : cells) blocks.push_back({p, colors[p]});
    EXPECT_EQ(keys(decompose(blocks)), exhaustive_covers(blocks)) << "trial " << trial;
  }
}

TEST(Decompose, Limits) {
  EXPECT_THROW(decompose({}), Error);
  BlockList big;
  for (int x = 0; x < 11; ++x)
    for (int z = 0; z < 11; ++z)
      for (int y = 0; y < 2; ++y) big.push_back({{x, y, z}, Color::Red});
  try {
    decompose(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
}

bool has_hypothesis(const std::vector<ConceptHypothesis>& hs, const std::vector<PartSpec>& parts) {
  return std::any_of(hs.begin(), hs.end(), [&](const ConceptHypothesis& h) {
    auto a = h.parts, b = parts;
    auto less = [](const PartSpec& x, const PartSpec& y) { return x.kind < y.kind; };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    return a == b;
  });
}

TEST(Generalize, LSurvivorsIncludeBothReadings) {
  TrainingInstance inst{"l", kL, {{"height", 3}, {"width", 3}}};
  auto hs = generalize(decompose(kL), inst);
  auto c = DimExpr::constant;
  PartSpec tower_h{"tower", {DimExpr::of("height")}, {c(0), c(0), c(0)}, std::nullopt};
  PartSpec row_w1{"row", {DimExpr::minus1("width")}, {c(1), c(0), c(0)}, std::nullopt};
  PartSpec tower_h1{"tower", {DimExpr::minus1("height")}, {c(0), c(1), c(0)}, std::nullopt};
  PartSpec row_w{"row", {DimExpr::of("width")}, {c(0), c(0), c(0)}, std::nullopt};
  EXPECT_TRUE(has_hypothesis(hs, {tower_h, row_w1}));
  EXPECT_TRUE(has_hypothesis(hs, {tower_h1, row_w}));
  for (const auto& h : hs) {
    EXPECT_EQ(predict(h, inst.valuation()).size(), kL.size());
  }
}

TEST(Generalize, FailsWhenParamsCannotExplainTheExample) {
  // A height of 9 cannot come from any part of a 5-block L.
  TrainingInstance inst{"l", kL, {{"height", 9}}};
  EXPECT_NO_THROW(generalize(decompose(kL), inst));  // constants still explain it
  TrainingInstance zero{"l", kL, {{"height", 0}}};
  EXPECT_THROW(InductionEpisode{zero}, Error);
}

TEST(Queries, NearestDistinguishingValuation) {
  TrainingInstance inst{"l", kL, {{"height", 3}, {"width", 3}}};
  auto hs = generalize(decompose(kL), inst);
  auto q = next_query(hs, inst);
  ASSERT_TRUE(q.has_value());
  int distance = std::abs(q->valuation.at("height") - 3) + std::abs(q->valuation.at("width") - 3);
  EXPECT_EQ(distance, 1);
  EXPECT_NE(q->text.find("exactly " + std::to_string(q->predicted_count) + " blocks"),
            std::string::npos);
  EXPECT_FALSE(q->agree.empty());
  EXPECT_FALSE(q->disagree.empty());

  auto yes = update(hs, *q, true);
  auto no = update(hs, *q, false);
  EXPECT_EQ(yes.size() + no.size(), hs.size());
}

TEST(Queries, ContradictionIsReported) {
  TrainingInstance inst{"l", kL, {{"height", 3}, {"width", 3}}};
  auto hs = generalize(decompose(kL), inst);
  auto q = *next_query(hs, inst);
  auto yes = update(hs, q, true);
  YesNoQuery same = q;
  try {
    update(yes, same, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ContradictoryAnswer);
  }
}

TEST(Episode, LearnsTowerPlusRowForL) {
  TrainingInstance inst{"l", kL, {{"height", 3}, {"width", 3}}};
  InductionEpisode ep(inst);
  auto truth = testing::ground_truth("l").cells;
  while (!ep.done()) {
    const auto& q = *ep.pending();
    ep.answer(truth(q.valuation).size() == q.predicted_count);
  }
  EXPECT_LE(ep.queries_asked(), InductionEpisode::kMaxQueries);
  ConceptDefinition def = ep.definition();
  std::vector<std::string> kinds;
  for (const auto& p : def.parts) kinds.push_back(p.kind);
  EXPECT_EQ(kinds, (std::vector<std::string>{"tower", "row"}));
  EXPECT_EQ(render(def.clause), "l(C,H,W) ← tower(C,H,0,0,0) ∧ row(C,W−1,1,0,0)");
  EXPECT_EQ(def.explanation.rfind("IF ", 0), 0u);
  for (const auto& v : testing::valuation_grid(def.params, 1, 5)) {
    Repository repo;
    repo.add(def);
    EXPECT_EQ(repo.extent("l", {v.at("height"), v.at("width")}, {0, 0, 0}), truth(v));
  }
}

TEST(Episode, ContradictoryAnswersAreSkipped) {
  // Answering "no" to everything eventually contradicts itself; the episode
  // drops those questions and still ends with a definition.
  TrainingInstance inst{"l", kL, {{"height", 3}, {"width", 3}}};
  InductionEpisode ep(inst);
  int contradictions = 0;
  while (!ep.done()) {
    if (ep.answer(false) == InductionEpisode::AnswerOutcome::Contradiction) ++contradictions;
  }
  EXPECT_LE(ep.queries_asked(), InductionEpisode::kMaxQueries);
  EXPECT_FALSE(ep.live().empty());
  EXPECT_NO_THROW(ep.definition());
}

TEST(Episode, RejectsDisconnectedExamples) {
  TrainingInstance inst{"pair", red({{0, 0, 0}, {2, 0, 0}}), {{"width", 2}}};
  EXPECT_THROW(InductionEpisode{inst}, Error);
}

TEST(Episode, KeepsFixedColorsOfMulticolorExamples) {
  BlockList blocks = {{{0, 0, 0}, Color::Red}, {{0, 1, 0}, Color::Red}, {{1, 0, 0}, Color::Blue}};
  TrainingInstance inst{"flag", blocks, {{"height", 2}}};
  InductionEpisode ep(inst);
  while (!ep.done()) ep.answer(true);
  auto def = ep.definition();
  ASSERT_EQ(def.parts.size(), 2u);
  std::set<Color> colors;
  for (const auto& p : def.parts) {
    ASSERT_TRUE(p.fixed_color.has_value());
    colors.insert(*p.fixed_color);
  }
  EXPECT_EQ(colors, (std::set<Color>{Color::Red, Color::Blue}));
}

}  // namespace
}  // namespace cobuild

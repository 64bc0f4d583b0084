// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "cobuild/error.hpp"
#include "cobuild/oracle.hpp"
#include "ground_truth.hpp"

namespace cobuild {
namespace {

PositionSet vertical_line(int n) {
  PositionSet s;
  for (int y = 0; y < n; ++y) s.insert({0, y, 0});
  return s;
}

std::string query(const std::string& valuation, std::size_t count) {
  return Replies::builtin().format("query",
                                   {{"valuation", valuation}, {"count", std::to_string(count)}});
}

std::string height(int h) {
  return Replies::builtin().format("query.valuation", {{"param", "height"}, {"value", std::to_string(h)}});
}

TEST(Oracle, AnswersCountQueriesFromTheTruth) {
  OracleArchitect tower({"height"}, [](const Valuation& v) { return vertical_line(v.at("height")); });
  EXPECT_EQ(tower.respond(query(height(2), 2)), "yes");
  EXPECT_EQ(tower.respond(query(height(2), 3)), "no");
  EXPECT_EQ(tower.respond("Hmm. " + query(height(5), 5)), "yes");

  OracleArchitect fixed({"height"}, [](const Valuation&) { return vertical_line(3); });
  EXPECT_EQ(fixed.respond(query(height(2), 2)), "no");
  EXPECT_EQ(fixed.respond(query(height(2), 3)), "yes");
}

TEST(Oracle, ReadsMultiParameterValuations) {
  ConceptDefinition l = testing::l_definition();
  OracleArchitect oracle(l, Repository{});
  Valuation v = oracle.parse_valuation("its height were 4 and its width were 2");
  EXPECT_EQ(v, (Valuation{{"height", 4}, {"width", 2}}));
  // An L of height h and width w has h + w - 1 blocks.
  for (int h = 1; h <= 5; ++h) {
    for (int w = 1; w <= 5; ++w) {
      std::string text = "If its height were " + std::to_string(h) + " and its width were " +
                         std::to_string(w) + ", would it contain exactly " +
                         std::to_string(h + w - 1) + " blocks?";
      EXPECT_EQ(oracle.respond(text), "yes") << text;
      EXPECT_TRUE(oracle.count_matches({{"height", h}, {"width", w}},
                                       static_cast<std::size_t>(h + w - 1)));
    }
  }
  EXPECT_THROW(oracle.parse_valuation("its height were 4"), Error);
  EXPECT_THROW(oracle.parse_valuation("its depth were 4 and its width were 2"), Error);
}

TEST(Oracle, AnswersClarificationsFromSlotValues) {
  OracleArchitect oracle({"height"}, [](const Valuation&) { return PositionSet{}; },
                         {{"color", "red"}, {"height", "3"}});
  const auto& r = Replies::builtin();
  EXPECT_EQ(oracle.respond(r.format("ask.height", {{"kind", "tower"}})), "3");
  EXPECT_EQ(oracle.respond(r.format("ask.color", {{"kind", "tower"}})), "red");
  EXPECT_THROW(oracle.respond(r.format("ask.width", {{"kind", "row"}})), Error);
}

TEST(Oracle, RejectsMalformedQuestions) {
  OracleArchitect oracle({"height"}, [](const Valuation& v) { return vertical_line(v.at("height")); });
  try {
    oracle.respond("What is the meaning of life?");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnanswerableQuestion);
  }
  EXPECT_THROW(oracle.respond(query("its height were tall", 2)), Error);
  EXPECT_THROW(oracle.respond(Replies::builtin().format(
                   "query", {{"valuation", height(2)}, {"count", "many"}})),
               Error);
}

}  // namespace
}  // namespace cobuild

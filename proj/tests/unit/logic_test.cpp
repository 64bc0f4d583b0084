// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>

#include "cobuild/error.hpp"
#include "cobuild/logic.hpp"

namespace cobuild {
namespace {

const SlotSchema& schema_of(const std::string& kind) {
  for (const auto& s : primitive_schemas()) {
    if (s.kind == kind) return s;
  }
  throw std::runtime_error("no schema " + kind);
}

TEST(Logic, PrimitiveSchemas) {
  std::vector<std::pair<std::string, std::vector<std::string>>> expected = {
      {"block", {}},
      {"tower", {"height"}},
      {"row", {"width"}},
      {"column", {"length"}},
      {"square", {"size"}},
      {"rectangle", {"width", "height"}},
      {"cube", {"size"}},
      {"cuboid", {"width", "height", "length"}}};
  ASSERT_EQ(primitive_schemas().size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(primitive_schemas()[i].kind, expected[i].first);
    EXPECT_EQ(primitive_schemas()[i].params, expected[i].second);
    EXPECT_TRUE(primitive_schemas()[i].color_required);
  }
}

TEST(Logic, CompletenessExamples) {
  auto tower = InstructionForm::blank(schema_of("tower"));
  tower.color = Color::Red;
  EXPECT_EQ(check_completeness(tower, schema_of("tower")), std::vector<std::string>{"height"});
  tower.set_dim("height", 3);
  EXPECT_TRUE(check_completeness(tower, schema_of("tower")).empty());

  auto cuboid = InstructionForm::blank(schema_of("cuboid"));
  cuboid.set_dim("width", 2);
  EXPECT_EQ(check_completeness(cuboid, schema_of("cuboid")),
            (std::vector<std::string>{"color", "height", "length"}));
}

TEST(Logic, CompletenessRejectsForeignSchema) {
  auto tower = InstructionForm::blank(schema_of("tower"));
  EXPECT_THROW(check_completeness(tower, schema_of("row")), Error);
}

TEST(Logic, RendersFormsWithMissingMarker) {
  auto tower = InstructionForm::blank(schema_of("tower"));
  tower.color = Color::Red;
  EXPECT_EQ(render(tower), "tower(color=red, height=?, placement=default)");
  tower.set_dim("height", 3);
  tower.placement = AbsolutePlacement{{2, 0, 2}};
  EXPECT_EQ(render(tower), "tower(color=red, height=3, placement=at(2,0,2))");
  tower.placement = RelativePlacement{{1, "tower"}, "top", Direction::Up};
  EXPECT_EQ(render(tower), "tower(color=red, height=3, placement=relative(tower#1, top, up))");
}

TEST(Logic, HtnTaskExamples) {
  auto tower = InstructionForm::blank(schema_of("tower"));
  tower.color = Color::Red;
  tower.set_dim("height", 3);
  EXPECT_EQ(render(to_htn_task(tower)), "build-tower(red, 3, DEFAULT_ANCHOR)");

  auto block = InstructionForm::blank(schema_of("block"));
  block.color = Color::Blue;
  block.placement = AbsolutePlacement{{2, 0, 2}};
  EXPECT_EQ(render(to_htn_task(block)), "build-block(blue, (2,0,2))");

  SlotSchema l{"l", {"height", "width"}, true};
  auto form = InstructionForm::blank(l);
  form.color = Color::Green;
  form.set_dim("height", 4);
  form.set_dim("width", 3);
  Task t = to_htn_task(form);
  EXPECT_EQ(render(t), "build-l(green, 4, 3, DEFAULT_ANCHOR)");
  EXPECT_EQ(task_kind(t), "l");
  EXPECT_EQ(render(bind_anchor(t, {4, 0, 5})), "build-l(green, 4, 3, (4,0,5))");
}

TEST(Logic, HtnTaskRequiresCompleteForm) {
  auto tower = InstructionForm::blank(schema_of("tower"));
  tower.set_dim("height", 3);
  try {
    to_htn_task(tower);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IncompleteForm);
  }
}

// Exhaustive over all schemas, color choices and dims in {MISSING, 1, 2}.
TEST(Logic, CompletenessIffNothingMissing) {
  for (const auto& schema : primitive_schemas()) {
    std::size_t n = schema.params.size() + 1;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < n; ++i) combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
      auto form = InstructionForm::blank(schema);
      std::size_t k = c;
      std::vector<std::string> missing;
      int color_choice = static_cast<int>(k % 3);
      k /= 3;
      if (color_choice == 0) {
        missing.push_back("color");
      } else {
        form.color = color_choice == 1 ? Color::Red : Color::Orange;
      }
      for (const auto& p : schema.params) {
        int choice = static_cast<int>(k % 3);
        k /= 3;
        if (choice == 0) {
          missing.push_back(p);
        } else {
          form.set_dim(p, choice);
        }
      }
      EXPECT_EQ(check_completeness(form, schema), missing) << render(form);
    }
  }
}

TEST(Logic, TaskConversionIsInjective) {
  std::set<std::string> forms;
  std::set<std::string> seen;
  for (const auto& schema : primitive_schemas()) {
    for (Color c : kAllColors) {
      for (int d = 1; d <= 3; ++d) {
        for (int p = 0; p < 3; ++p) {
          auto form = InstructionForm::blank(schema);
          form.color = c;
          for (auto& slot : form.dims) slot.value = d;
          if (p == 1) form.placement = AbsolutePlacement{{d, 0, 1}};
          if (p == 2) form.placement = RelativePlacement{{d, "tower"}, "top", Direction::Up};
          forms.insert(render(form));
          seen.insert(render(to_htn_task(form)));
        }
      }
    }
  }
  EXPECT_EQ(seen.size(), forms.size());
}

TEST(Logic, ClauseRenderingAndWellFormedness) {
  HornClause c;
  c.head = {"l", {Variable{"C"}, Variable{"H"}, Variable{"W"}}};
  c.body = {{"tower", {Variable{"C"}, Variable{"H"}, IntConst{0}, IntConst{0}, IntConst{0}}},
            {"row", {Variable{"C"}, Variable{"W", -1}, IntConst{1}, IntConst{0}, IntConst{0}}}};
  EXPECT_EQ(render(c), "l(C,H,W) ← tower(C,H,0,0,0) ∧ row(C,W−1,1,0,0)");
  EXPECT_TRUE(well_formed(c));
  c.head.args.push_back(Variable{"L"});
  EXPECT_FALSE(well_formed(c));
  c.parameters.push_back("L");
  EXPECT_TRUE(well_formed(c));
}

}  // namespace
}  // namespace cobuild

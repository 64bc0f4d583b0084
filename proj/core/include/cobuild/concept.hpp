// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cobuild/logic.hpp"
#include "cobuild/types.hpp"

namespace cobuild {

/// Parameter name -> value.
using Valuation = std::map<std::string, int>;

/// Integer expression over concept parameters: c, p, p−1 or p+1.
struct DimExpr {
  enum class Tag { Param, ParamMinus1, ParamPlus1, Const };  // preference order

  Tag tag = Tag::Const;
  std::string param;  // empty for Const
  int value = 0;      // Const only

  static DimExpr constant(int c) { return {Tag::Const, {}, c}; }
  static DimExpr of(std::string p) { return {Tag::Param, std::move(p), 0}; }
  static DimExpr minus1(std::string p) { return {Tag::ParamMinus1, std::move(p), 0}; }
  static DimExpr plus1(std::string p) { return {Tag::ParamPlus1, std::move(p), 0}; }

  /// Throws Error{UnknownKind} if the parameter is not in the valuation.
  int eval(const Valuation& v) const;
  int rank() const { return static_cast<int>(tag); }

  friend bool operator==(const DimExpr&, const DimExpr&) = default;
};

/// "height", "height−1", "3", …
std::string render(const DimExpr& e);

/// One conjunct of a concept: a structure of `kind` placed at `offset` from the
/// concept anchor, with dimensions given as expressions.
struct PartSpec {
  std::string kind;
  std::vector<DimExpr> dims;  // in the part kind's schema order
  std::array<DimExpr, 3> offset = {DimExpr::constant(0), DimExpr::constant(0),
                                   DimExpr::constant(0)};
  std::optional<Color> fixed_color;  // nullopt: inherits the concept color

  friend bool operator==(const PartSpec&, const PartSpec&) = default;
};

struct ConceptDefinition {
  std::string name;
  std::vector<std::string> params;  // declaration order
  std::vector<PartSpec> parts;      // cover order
  HornClause clause;
  std::string explanation;

  SlotSchema schema() const { return {name, params, true}; }
  Valuation valuation(const std::vector<int>& values) const;
};

/// Builds `name(C, P1..Pk) ← part1(C, dims…, ox, oy, oz) ∧ …`.
HornClause make_clause(const std::string& name, const std::vector<std::string>& params,
                       const std::vector<PartSpec>& parts);

/// "IF a tower of height H at (0,0,0) and … THEN this is a <name>"
std::string make_explanation(const std::string& name, const std::vector<std::string>& params,
                             const std::vector<PartSpec>& parts,
                             const std::vector<SlotSchema>& part_schemas);

/// Clause variable for a parameter: upper-cased initial, or the full upper-cased
/// name when two parameters share an initial.
std::string param_variable(const std::string& param, const std::vector<std::string>& params);

}  // namespace cobuild

// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cobuild/concept.hpp"
#include "cobuild/replies.hpp"
#include "cobuild/repository.hpp"

namespace cobuild {

/// Scripted architect that knows a ground-truth concept. It answers the
/// builder's clarification questions from fixed slot values and its yes/no
/// count queries by evaluating the ground truth.
class OracleArchitect {
 public:
  using Truth = std::function<PositionSet(const Valuation&)>;

  OracleArchitect(std::vector<std::string> params, Truth truth,
                  std::map<std::string, std::string> slot_values = {},
                  const Replies& replies = Replies::builtin());
  /// Ground truth given by a definition evaluated against `repo`.
  OracleArchitect(const ConceptDefinition& def, const Repository& repo,
                  std::map<std::string, std::string> slot_values = {},
                  const Replies& replies = Replies::builtin());

  /// Reply to one builder turn. Throws Error{UnanswerableQuestion} when the
  /// text matches none of the builder's question templates.
  std::string respond(std::string_view builder_text) const;

  /// Ground-truth answer to "would it have exactly `count` blocks at `v`?".
  bool count_matches(const Valuation& v, std::size_t count) const;
  /// Parses the valuation text of a count query.
  Valuation parse_valuation(std::string_view text) const;

 private:
  std::vector<std::string> params_;
  Truth truth_;
  std::map<std::string, std::string> slots_;
  const Replies& replies_;
};

}  // namespace cobuild

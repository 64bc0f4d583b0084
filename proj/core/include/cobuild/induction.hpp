// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cobuild/concept.hpp"
#include "cobuild/replies.hpp"
#include "cobuild/types.hpp"

namespace cobuild {

/// One primitive piece of a cover, in the instance's coordinates.
struct CoverPart {
  std::string kind;
  std::vector<int> dims;
  Position anchor;
  Color color;
  friend bool operator==(const CoverPart&, const CoverPart&) = default;
};

using Cover = std::vector<CoverPart>;

inline constexpr std::size_t kMaxInstanceBlocks = 200;

/// All minimum-cardinality exact covers of `blocks` by single-colored
/// primitive boxes. Parts within a cover are sorted by (kind index, anchor,
/// dims) and covers are sorted lexicographically.
/// Throws Error{TooLarge} above kMaxInstanceBlocks blocks or when the search
/// budget runs out, Error{NoCover} for an empty instance.
std::vector<Cover> decompose(const BlockList& blocks);

struct TrainingInstance {
  std::string name;
  BlockList blocks;
  std::vector<std::pair<std::string, int>> params;  // declaration order

  Valuation valuation() const;
  std::vector<std::string> param_names() const;
  /// Same blocks translated so the bounding box starts at the origin.
  TrainingInstance normalized() const;
};

struct ConceptHypothesis {
  std::vector<PartSpec> parts;
  std::size_t cover_index = 0;
  friend bool operator==(const ConceptHypothesis& a, const ConceptHypothesis& b) {
    return a.parts == b.parts;
  }
};

/// Union of the hypothesis' parts at a valuation (parts with a dimension
/// below 1 are empty). Primitive parts only.
PositionSet predict(const ConceptHypothesis& h, const Valuation& v);
std::size_t predict_count(const ConceptHypothesis& h, const Valuation& v);

/// Preference order: fieldwise Param < Param−1 < Param+1 < Const, then cover
/// index, then parameter/constant detail.
bool preferred(const ConceptHypothesis& a, const ConceptHypothesis& b,
               const std::vector<std::string>& params);

/// Every hypothesis that reproduces the instance at its declared valuation and
/// stays well-formed (no overlap, connected) on the test grid {2,3,4}^k.
/// Sorted by preference. Throws Error{NoConsistentHypothesis}.
std::vector<ConceptHypothesis> generalize(const std::vector<Cover>& covers,
                                          const TrainingInstance& instance);

struct YesNoQuery {
  Valuation valuation;
  std::string text;
  std::size_t predicted_count = 0;
  std::vector<std::size_t> agree;     // indices into the live list
  std::vector<std::size_t> disagree;
};

/// Nearest valuation (L1 from the training valuation, each parameter in
/// [1..6], ties lexicographic) where live hypotheses predict different block
/// counts. nullopt when at most one hypothesis is live or none differ.
std::optional<YesNoQuery> next_query(const std::vector<ConceptHypothesis>& live,
                                     const TrainingInstance& instance,
                                     const std::vector<Valuation>& excluded = {},
                                     const Replies& replies = Replies::builtin());

/// Keeps the hypotheses whose predicted count matches the answer.
/// Throws Error{ContradictoryAnswer} if none would remain.
std::vector<ConceptHypothesis> update(const std::vector<ConceptHypothesis>& live,
                                      const YesNoQuery& query, bool answer);

ConceptDefinition finalize(const ConceptHypothesis& chosen, const TrainingInstance& instance);

/// One induction dialogue: decompose, generalize, then at most kMaxQueries
/// yes/no questions before finalizing the most preferred live hypothesis.
class InductionEpisode {
 public:
  static constexpr int kMaxQueries = 5;

  enum class AnswerOutcome { Applied, Contradiction };

  /// Throws Error{TooLarge | NoCover | NoConsistentHypothesis}.
  explicit InductionEpisode(TrainingInstance instance,
                            const Replies& replies = Replies::builtin());

  const std::optional<YesNoQuery>& pending() const noexcept { return pending_; }
  bool done() const noexcept { return !pending_.has_value(); }
  AnswerOutcome answer(bool yes);

  ConceptDefinition definition() const;
  const std::vector<ConceptHypothesis>& live() const noexcept { return live_; }
  const std::vector<Cover>& covers() const noexcept { return covers_; }
  const TrainingInstance& instance() const noexcept { return instance_; }
  int queries_asked() const noexcept { return asked_; }

 private:
  void advance();

  TrainingInstance instance_;
  const Replies& replies_;
  std::vector<Cover> covers_;
  std::vector<ConceptHypothesis> live_;
  std::vector<Valuation> excluded_;
  std::optional<YesNoQuery> pending_;
  int asked_ = 0;
};

}  // namespace cobuild

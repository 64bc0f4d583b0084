// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/induction.hpp"

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>

#include "cobuild/error.hpp"
#include "cobuild/geometry.hpp"

namespace cobuild {

namespace {

// ---------------------------------------------------------------------------
// Exact cover search.

using CellBits = std::bitset<kMaxInstanceBlocks>;

constexpr std::size_t kCoverNodeBudget = 4'000'000;
constexpr std::size_t kMaxHypotheses = 2'000'000;

struct Candidate {
  CoverPart part;
  CellBits cells;
  std::size_t size = 0;
};

auto part_key(const CoverPart& p) {
  return std::make_tuple(primitive_index(p.kind), p.anchor, p.dims);
}

bool part_less(const CoverPart& a, const CoverPart& b) { return part_key(a) < part_key(b); }

bool cover_less(const Cover& a, const Cover& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), part_less);
}

class CoverSearch {
 public:
  explicit CoverSearch(const BlockList& blocks) : n_(blocks.size()) {
    std::map<Position, std::size_t> index;
    for (std::size_t i = 0; i < blocks.size(); ++i) index[blocks[i].pos] = i;
    auto color_at = [&](Position p) -> std::optional<Color> {
      auto it = index.find(p);
      if (it == index.end()) return std::nullopt;
      return blocks[it->second].color;
    };

    for (const auto& b : blocks) {
      auto same = [&](Position p) { return color_at(p) == b.color; };
      int max_x = 0, max_y = 0, max_z = 0;
      while (same(b.pos + Position{max_x, 0, 0})) ++max_x;
      while (same(b.pos + Position{0, max_y, 0})) ++max_y;
      while (same(b.pos + Position{0, 0, max_z})) ++max_z;
      for (int sx = 1; sx <= max_x; ++sx) {
        for (int sy = 1; sy <= max_y; ++sy) {
          for (int sz = 1; sz <= max_z; ++sz) {
            Candidate c;
            bool full = true;
            for (int i = 0; i < sx && full; ++i)
              for (int j = 0; j < sy && full; ++j)
                for (int k = 0; k < sz && full; ++k) {
                  Position p = b.pos + Position{i, j, k};
                  if (!same(p)) {
                    full = false;
                  } else {
                    c.cells.set(index.at(p));
                  }
                }
            if (!full) break;  // growing z further cannot help
            BoxKind kind = classify_box({sx, sy, sz});
            c.part = {kind.kind, kind.dims, b.pos, b.color};
            c.size = static_cast<std::size_t>(sx) * sy * sz;
            max_size_ = std::max(max_size_, c.size);
            candidates_.push_back(std::move(c));
          }
        }
      }
    }
    by_block_.resize(n_);
    for (std::size_t c = 0; c < candidates_.size(); ++c) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (candidates_[c].cells.test(i)) by_block_[i].push_back(c);
      }
    }
  }

  std::vector<Cover> run() {
    for (std::size_t k = 1; k <= n_; ++k) {
      limit_ = k;
      CellBits covered;
      std::vector<std::size_t> chosen;
      dfs(covered, chosen);
      if (!solutions_.empty()) break;
    }
    std::vector<Cover> out;
    for (const auto& s : solutions_) {
      Cover cover;
      for (std::size_t c : s) cover.push_back(candidates_[c].part);
      std::sort(cover.begin(), cover.end(), part_less);
      out.push_back(std::move(cover));
    }
    std::sort(out.begin(), out.end(), cover_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  void dfs(CellBits& covered, std::vector<std::size_t>& chosen) {
    if (++nodes_ > kCoverNodeBudget) {
      throw Error(Errc::TooLarge, "structure is too complex to decompose");
    }
    std::size_t done = covered.count();
    if (done == n_) {
      solutions_.push_back(chosen);
      return;
    }
    if (chosen.size() == limit_) return;
    if (n_ - done > (limit_ - chosen.size()) * max_size_) return;

    // Branch on the uncovered block with the fewest fitting candidates.
    std::size_t best = n_, best_count = SIZE_MAX;
    for (std::size_t i = 0; i < n_; ++i) {
      if (covered.test(i)) continue;
      std::size_t count = 0;
      for (std::size_t c : by_block_[i]) {
        if ((candidates_[c].cells & covered).none()) ++count;
      }
      if (count < best_count) {
        best = i;
        best_count = count;
        if (count <= 1) break;
      }
    }
    if (best_count == 0) return;
    for (std::size_t c : by_block_[best]) {
      const CellBits& cells = candidates_[c].cells;
      if ((cells & covered).any()) continue;
      covered |= cells;
      chosen.push_back(c);
      dfs(covered, chosen);
      chosen.pop_back();
      covered &= ~cells;
    }
  }

  std::size_t n_;
  std::vector<Candidate> candidates_;
  std::vector<std::vector<std::size_t>> by_block_;
  std::size_t max_size_ = 1;
  std::size_t limit_ = 1;
  std::size_t nodes_ = 0;
  std::vector<std::vector<std::size_t>> solutions_;
};

// ---------------------------------------------------------------------------
// Packed cell sets for fast hypothesis checks.

std::uint32_t pack(int x, int y, int z) {
  return (static_cast<std::uint32_t>(x) << 20) | (static_cast<std::uint32_t>(y) << 10) |
         static_cast<std::uint32_t>(z);
}

struct Evaluated {
  std::vector<std::uint32_t> cells;  // sorted, may contain duplicates on overlap
  bool bad_dims = false;
};

Evaluated evaluate(const ConceptHypothesis& h, const Valuation& v, bool allow_empty_parts) {
  Evaluated out;
  for (const auto& part : h.parts) {
    std::vector<int> dims;
    bool empty = false;
    for (const auto& d : part.dims) {
      dims.push_back(d.eval(v));
      empty |= dims.back() < 1;
    }
    int ox = part.offset[0].eval(v), oy = part.offset[1].eval(v), oz = part.offset[2].eval(v);
    if (empty) {
      out.bad_dims |= !allow_empty_parts;
      continue;
    }
    if (ox < 0 || oy < 0 || oz < 0) {
      out.bad_dims = true;
      continue;
    }
    Position size = primitive_box(part.kind, dims);
    for (int j = 0; j < size.y; ++j)
      for (int i = 0; i < size.x; ++i)
        for (int k = 0; k < size.z; ++k) out.cells.push_back(pack(ox + i, oy + j, oz + k));
  }
  std::sort(out.cells.begin(), out.cells.end());
  return out;
}

bool has_overlap(const std::vector<std::uint32_t>& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

bool connected(const std::vector<std::uint32_t>& sorted) {
  if (sorted.empty()) return true;
  std::vector<char> seen(sorted.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    std::uint32_t key = sorted[i];
    int x = static_cast<int>(key >> 20), y = static_cast<int>((key >> 10) & 1023),
        z = static_cast<int>(key & 1023);
    for (Position d : kNeighborOffsets) {
      int nx = x + d.x, ny = y + d.y, nz = z + d.z;
      if (nx < 0 || ny < 0 || nz < 0 || nx > 1023 || ny > 1023 || nz > 1023) continue;
      auto it = std::lower_bound(sorted.begin(), sorted.end(), pack(nx, ny, nz));
      if (it == sorted.end() || *it != pack(nx, ny, nz)) continue;
      std::size_t j = static_cast<std::size_t>(it - sorted.begin());
      if (!seen[j]) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == sorted.size();
}

std::vector<Valuation> grid(const std::vector<std::string>& params, int lo, int hi) {
  std::vector<Valuation> out{{}};
  for (const auto& p : params) {
    std::vector<Valuation> next;
    for (const auto& v : out) {
      for (int x = lo; x <= hi; ++x) {
        Valuation w = v;
        w[p] = x;
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<DimExpr> consistent_exprs(int value, const TrainingInstance& inst) {
  std::vector<DimExpr> out;
  for (const auto& [p, v] : inst.params)
    if (v == value) out.push_back(DimExpr::of(p));
  for (const auto& [p, v] : inst.params)
    if (v - 1 == value) out.push_back(DimExpr::minus1(p));
  for (const auto& [p, v] : inst.params)
    if (v + 1 == value) out.push_back(DimExpr::plus1(p));
  out.push_back(DimExpr::constant(value));
  return out;
}

template <class F>
void for_each_field(const ConceptHypothesis& h, F&& f) {
  for (const auto& part : h.parts) {
    for (const auto& d : part.dims) f(d);
    for (const auto& o : part.offset) f(o);
  }
}

std::vector<int> detail_key(const ConceptHypothesis& h, const std::vector<std::string>& params) {
  std::vector<int> key;
  for_each_field(h, [&](const DimExpr& e) {
    if (e.tag == DimExpr::Tag::Const) {
      key.push_back(static_cast<int>(params.size()));
      key.push_back(e.value);
    } else {
      auto it = std::find(params.begin(), params.end(), e.param);
      key.push_back(static_cast<int>(it - params.begin()));
      key.push_back(0);
    }
  });
  return key;
}

std::vector<int> rank_key(const ConceptHypothesis& h) {
  std::vector<int> key;
  for_each_field(h, [&](const DimExpr& e) { key.push_back(e.rank()); });
  return key;
}

std::string valuation_text(const Valuation& v, const std::vector<std::string>& order,
                           const Replies& replies) {
  std::string text;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) text += " and ";
    text += replies.format("query.valuation",
                           {{"param", order[i]}, {"value", std::to_string(v.at(order[i]))}});
  }
  return text;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Cover> decompose(const BlockList& blocks) {
  if (blocks.empty()) throw Error(Errc::NoCover, "there are no blocks to decompose");
  if (blocks.size() > kMaxInstanceBlocks) {
    throw Error(Errc::TooLarge, "structure has " + std::to_string(blocks.size()) +
                                    " blocks; at most " + std::to_string(kMaxInstanceBlocks) +
                                    " are supported");
  }
  return CoverSearch(blocks).run();
}

Valuation TrainingInstance::valuation() const {
  Valuation v;
  for (const auto& [p, x] : params) v[p] = x;
  return v;
}

std::vector<std::string> TrainingInstance::param_names() const {
  std::vector<std::string> out;
  for (const auto& [p, x] : params) out.push_back(p);
  return out;
}

TrainingInstance TrainingInstance::normalized() const {
  TrainingInstance out = *this;
  if (blocks.empty()) return out;
  Position lo = blocks.front().pos;
  for (const auto& b : blocks) {
    lo = {std::min(lo.x, b.pos.x), std::min(lo.y, b.pos.y), std::min(lo.z, b.pos.z)};
  }
  for (auto& b : out.blocks) b.pos = b.pos - lo;
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const Block& a, const Block& b) { return YxzLess{}(a.pos, b.pos); });
  return out;
}

PositionSet predict(const ConceptHypothesis& h, const Valuation& v) {
  PositionSet out;
  for (std::uint32_t key : evaluate(h, v, true).cells) {
    out.insert({static_cast<int>(key >> 20), static_cast<int>((key >> 10) & 1023),
                static_cast<int>(key & 1023)});
  }
  return out;
}

std::size_t predict_count(const ConceptHypothesis& h, const Valuation& v) {
  auto cells = evaluate(h, v, true).cells;
  return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

bool preferred(const ConceptHypothesis& a, const ConceptHypothesis& b,
               const std::vector<std::string>& params) {
  auto ra = rank_key(a), rb = rank_key(b);
  if (ra != rb) return ra < rb;
  if (a.cover_index != b.cover_index) return a.cover_index < b.cover_index;
  return detail_key(a, params) < detail_key(b, params);
}

std::vector<ConceptHypothesis> generalize(const std::vector<Cover>& covers,
                                          const TrainingInstance& instance) {
  if (covers.empty()) throw Error(Errc::NoConsistentHypothesis, "no decomposition to generalize");
  const std::vector<std::string> params = instance.param_names();
  const std::vector<Valuation> test_grid = grid(params, 2, 4);

  std::set<Color> colors;
  for (const auto& b : instance.blocks) colors.insert(b.color);
  const bool single_color = colors.size() <= 1;

  Position lo{0, 0, 0};
  if (!instance.blocks.empty()) {
    lo = instance.blocks.front().pos;
    for (const auto& b : instance.blocks) {
      lo = {std::min(lo.x, b.pos.x), std::min(lo.y, b.pos.y), std::min(lo.z, b.pos.z)};
    }
  }

  std::vector<ConceptHypothesis> out;
  std::size_t enumerated = 0;
  for (std::size_t ci = 0; ci < covers.size(); ++ci) {
    const Cover& cover = covers[ci];
    // Options for every numeric field, in part order: dims, then x/y/z offset.
    std::vector<std::vector<DimExpr>> options;
    for (const auto& part : cover) {
      for (int d : part.dims) options.push_back(consistent_exprs(d, instance));
      Position off = part.anchor - lo;
      options.push_back(consistent_exprs(off.x, instance));
      options.push_back(consistent_exprs(off.y, instance));
      options.push_back(consistent_exprs(off.z, instance));
    }

    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      if (++enumerated > kMaxHypotheses) {
        throw Error(Errc::TooLarge, "too many candidate generalizations");
      }
      ConceptHypothesis h;
      h.cover_index = ci;
      std::size_t f = 0;
      for (const auto& part : cover) {
        PartSpec spec;
        spec.kind = part.kind;
        for (std::size_t d = 0; d < part.dims.size(); ++d) spec.dims.push_back(options[f][pick[f]]), ++f;
        for (std::size_t a = 0; a < 3; ++a) spec.offset[a] = options[f][pick[f]], ++f;
        if (!single_color) spec.fixed_color = part.color;
        h.parts.push_back(std::move(spec));
      }

      bool ok = true;
      for (const auto& v : test_grid) {
        Evaluated e = evaluate(h, v, false);
        if (e.bad_dims || has_overlap(e.cells) || !connected(e.cells)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(std::move(h));

      // Odometer over the option lists, last field fastest.
      std::size_t i = options.size();
      while (i > 0) {
        --i;
        if (++pick[i] < options[i].size()) break;
        pick[i] = 0;
        if (i == 0) {
          i = SIZE_MAX;
          break;
        }
      }
      if (options.empty() || i == SIZE_MAX) break;
    }
  }

  if (out.empty()) {
    throw Error(Errc::NoConsistentHypothesis,
                "no generalization keeps the structure connected and non-overlapping");
  }
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return preferred(a, b, params);
  });
  std::vector<ConceptHypothesis> unique;
  for (auto& h : out) {
    if (std::find(unique.begin(), unique.end(), h) == unique.end()) unique.push_back(std::move(h));
  }
  return unique;
}

std::optional<YesNoQuery> next_query(const std::vector<ConceptHypothesis>& live,
                                     const TrainingInstance& instance,
                                     const std::vector<Valuation>& excluded,
                                     const Replies& replies) {
  if (live.size() <= 1) return std::nullopt;
  const std::vector<std::string> params = instance.param_names();
  const Valuation training = instance.valuation();

  struct Candidate {
    int distance;
    std::vector<int> values;
    Valuation valuation;
  };
  std::vector<Candidate> candidates;
  for (auto& v : grid(params, 1, 6)) {
    Candidate c{0, {}, v};
    for (const auto& p : params) {
      c.distance += std::abs(v.at(p) - training.at(p));
      c.values.push_back(v.at(p));
    }
    candidates.push_back(std::move(c));
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.distance, a.values) < std::tie(b.distance, b.values);
  });

  for (const auto& c : candidates) {
    if (c.distance == 0) continue;
    if (std::find(excluded.begin(), excluded.end(), c.valuation) != excluded.end()) continue;
    std::vector<std::size_t> counts;
    for (const auto& h : live) counts.push_back(predict_count(h, c.valuation));
    if (std::all_of(counts.begin(), counts.end(), [&](auto n) { return n == counts.front(); })) {
      continue;
    }
    YesNoQuery q;
    q.valuation = c.valuation;
    q.predicted_count = counts.front();
    for (std::size_t i = 0; i < counts.size(); ++i) {
      (counts[i] == q.predicted_count ? q.agree : q.disagree).push_back(i);
    }
    q.text = replies.format("query", {{"valuation", valuation_text(c.valuation, params, replies)},
                                      {"count", std::to_string(q.predicted_count)}});
    return q;
  }
  return std::nullopt;
}

std::vector<ConceptHypothesis> update(const std::vector<ConceptHypothesis>& live,
                                      const YesNoQuery& query, bool answer) {
  std::vector<ConceptHypothesis> out;
  for (const auto& h : live) {
    if ((predict_count(h, query.valuation) == query.predicted_count) == answer) out.push_back(h);
  }
  if (out.empty()) {
    throw Error(Errc::ContradictoryAnswer, "no hypothesis is consistent with that answer");
  }
  return out;
}

ConceptDefinition finalize(const ConceptHypothesis& chosen, const TrainingInstance& instance) {
  ConceptDefinition def;
  def.name = instance.name;
  def.params = instance.param_names();
  def.parts = chosen.parts;
  def.clause = make_clause(def.name, def.params, def.parts);
  std::vector<SlotSchema> part_schemas;
  for (const auto& part : def.parts) {
    int idx = primitive_index(part.kind);
    part_schemas.push_back(idx >= 0 ? primitive_schemas()[idx] : SlotSchema{part.kind, {}, true});
  }
  def.explanation = make_explanation(def.name, def.params, def.parts, part_schemas);
  return def;
}

InductionEpisode::InductionEpisode(TrainingInstance instance, const Replies& replies)
    : instance_(instance.normalized()), replies_(replies) {
  for (const auto& [p, v] : instance_.params) {
    if (v < 1) throw Error(Errc::NoConsistentHypothesis, "dimension " + p + " must be at least 1");
  }
  PositionSet cells;
  for (const auto& b : instance_.blocks) cells.insert(b.pos);
  if (!is_connected(cells)) {
    throw Error(Errc::NoConsistentHypothesis, "the blocks do not form one connected structure");
  }
  covers_ = decompose(instance_.blocks);
  live_ = generalize(covers_, instance_);
  advance();
}

void InductionEpisode::advance() {
  if (asked_ >= kMaxQueries) {
    pending_.reset();
    return;
  }
  pending_ = next_query(live_, instance_, excluded_, replies_);
}

InductionEpisode::AnswerOutcome InductionEpisode::answer(bool yes) {
  if (!pending_) throw Error(Errc::ContradictoryAnswer, "no question is pending");
  AnswerOutcome outcome = AnswerOutcome::Applied;
  try {
    live_ = update(live_, *pending_, yes);
  } catch (const Error& e) {
    if (e.code() != Errc::ContradictoryAnswer) throw;
    excluded_.push_back(pending_->valuation);
    outcome = AnswerOutcome::Contradiction;
  }
  ++asked_;
  advance();
  return outcome;
}

ConceptDefinition InductionEpisode::definition() const { return finalize(live_.front(), instance_); }

}  // namespace cobuild

// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "cobuild/error.hpp"
#include "cobuild/repository.hpp"

namespace cobuild {
namespace {

constexpr std::array<std::string_view, 7> kTagNames = {
    "awaiting-instruction", "awaiting-slot", "offering-save", "awaiting-name",
    "awaiting-dims",        "awaiting-query", "session-ended"};

constexpr std::array<std::string_view, 11> kNumberWords = {
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"};

const std::map<std::string, std::string, std::less<>>& measures() {
  static const std::map<std::string, std::string, std::less<>> m = {
      {"tall", "height"}, {"high", "height"}, {"wide", "width"},
      {"long", "length"}, {"deep", "length"}, {"big", "size"},   {"large", "size"}};
  return m;
}

constexpr std::array<std::string_view, 4> kParams = {"height", "width", "length", "size"};

std::optional<int> number_value(std::string_view tok) {
  for (std::size_t i = 0; i < kNumberWords.size(); ++i) {
    if (tok == kNumberWords[i]) return static_cast<int>(i);
  }
  if (tok.empty() || tok.size() > 3) return std::nullopt;
  int v = 0;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

using Hits = std::vector<std::pair<std::size_t, std::string>>;

std::map<std::string, ClassMatcher> lexical_classes(const ParseContext& ctx,
                                                    const Grammar& grammar) {
  std::map<std::string, ClassMatcher> c;
  c["color"] = [](const std::vector<std::string>& t, std::size_t i) {
    Hits h;
    if (auto col = parse_color(t[i])) h.emplace_back(1, std::string(to_string(*col)));
    return h;
  };
  c["kind"] = [&ctx](const std::vector<std::string>& t, std::size_t i) {
    Hits h;
    for (const auto& s : ctx.schemas) {
      if (s.kind == t[i]) h.emplace_back(1, s.kind);
    }
    return h;
  };
  c["num"] = [](const std::vector<std::string>& t, std::size_t i) {
    Hits h;
    if (auto v = number_value(t[i])) h.emplace_back(1, std::to_string(*v));
    return h;
  };
  c["param"] = [](const std::vector<std::string>& t, std::size_t i) {
    Hits h;
    if (std::find(kParams.begin(), kParams.end(), t[i]) != kParams.end()) h.emplace_back(1, t[i]);
    return h;
  };
  c["measure"] = [](const std::vector<std::string>& t, std::size_t i) {
    Hits h;
    if (auto it = measures().find(t[i]); it != measures().end()) h.emplace_back(1, it->second);
    return h;
  };
  c["corner"] = [](const std::vector<std::string>& t, std::size_t i) {
    Hits h;
    if (i + 2 < t.size() && (t[i] == "bottom" || t[i] == "top") &&
        (t[i + 1] == "left" || t[i + 1] == "right") &&
        (t[i + 2] == "front" || t[i + 2] == "back")) {
      std::string name = t[i] + "-" + t[i + 1] + "-" + t[i + 2];
      if (i + 3 < t.size() && t[i + 3] == "corner") h.emplace_back(4, name);
      h.emplace_back(3, name);
    }
    return h;
  };
  c["name"] = [&grammar](const std::vector<std::string>& t, std::size_t i) {
    Hits h;
    const std::string& w = t[i];
    if (w.size() <= 32 && std::isalpha(static_cast<unsigned char>(w[0])) &&
        !grammar.literals().count(w) && !parse_color(w)) {
      h.emplace_back(1, w);
    }
    return h;
  };
  return c;
}

std::optional<std::string> capture(const Captures& caps, std::string_view key) {
  for (const auto& [k, v] : caps) {
    if (k == key) return v;
  }
  return std::nullopt;
}

/// Pairs each dimension word with the number next to it, in either order.
std::optional<std::vector<std::pair<std::string, int>>> dim_pairs(const Captures& caps) {
  std::vector<std::pair<std::string, int>> out;
  std::optional<std::string> param;
  std::optional<int> value;
  for (const auto& [k, v] : caps) {
    if (k == "param" || k == "measure") {
      if (param) return std::nullopt;
      param = v;
    } else if (k == "num") {
      if (value) return std::nullopt;
      value = std::stoi(v);
    } else {
      continue;
    }
    if (param && value) {
      out.emplace_back(*param, *value);
      param.reset();
      value.reset();
    }
  }
  if (param || value) return std::nullopt;
  return out;
}

struct Outcome {
  std::optional<ParsedMessage> message;
  std::string hint;  // set when the template matched but could not be resolved
};

Outcome build_instruction(const Captures& caps, const ParseContext& ctx) {
  auto kind = capture(caps, "kind");
  if (!kind) return {};
  auto schema = std::find_if(ctx.schemas.begin(), ctx.schemas.end(),
                             [&](const SlotSchema& s) { return s.kind == *kind; });
  if (schema == ctx.schemas.end()) return {};
  InstructionForm form = InstructionForm::blank(*schema);
  if (auto c = capture(caps, "color")) form.color = parse_color(*c);

  auto dims = dim_pairs(caps);
  if (!dims) return {};
  for (auto [param, value] : *dims) {
    if (schema->params.size() == 1) param = schema->params.front();
    auto slot = std::find_if(form.dims.begin(), form.dims.end(),
                             [&](const DimSlot& d) { return d.param == param; });
    if (slot == form.dims.end() || slot->value) return {};
    if (value < 1) return {std::nullopt, "bad-dimension"};
    form.set_dim(param, value);
  }

  auto x = capture(caps, "x");
  auto dir = capture(caps, "dir");
  if (x) {
    form.placement = AbsolutePlacement{
        {std::stoi(*x), std::stoi(*capture(caps, "y")), std::stoi(*capture(caps, "z"))}};
  } else if (dir) {
    const Referent* ref = nullptr;
    auto refkind = capture(caps, "refkind");
    auto refcolor = capture(caps, "refcolor");
    for (auto it = ctx.referents.rbegin(); it != ctx.referents.rend() && !ref; ++it) {
      if (refkind && it->kind != *refkind) continue;
      if (refcolor && to_string(it->color) != *refcolor) continue;
      ref = &*it;
    }
    if (!ref) return {std::nullopt, "unknown-reference"};
    Direction d = *parse_direction(*dir);
    std::string ind = default_indicator(ref->kind, d);
    if (auto given = capture(caps, "ind")) {
      auto names = indicator_names(ref->kind);
      if (std::find(names.begin(), names.end(), *given) == names.end()) {
        return {std::nullopt, "invalid-indicator"};
      }
      ind = *given;
    }
    form.placement = RelativePlacement{{ref->id, ref->kind}, ind, d};
  }
  return {BuildInstruction{std::move(form)}, {}};
}

Outcome slot_answer(const Captures& caps, const ParseContext& ctx) {
  if (!ctx.pending_slot) return {};
  const std::string& pending = *ctx.pending_slot;
  if (auto c = capture(caps, "color")) {
    return {SlotAnswer{"color", *parse_color(*c)}, {}};
  }
  auto dims = dim_pairs(caps);
  int value = 0;
  std::string slot = pending;
  if (dims && dims->size() == 1) {
    slot = dims->front().first == "size" ? pending : dims->front().first;
    value = dims->front().second;
  } else if (auto n = capture(caps, "num"); n && !capture(caps, "param") &&
                                            !capture(caps, "measure")) {
    value = std::stoi(*n);
  } else {
    return {};
  }
  if (slot == "color") return {};
  if (value < 1) return {std::nullopt, "bad-dimension"};
  return {SlotAnswer{slot, value}, {}};
}

Outcome dimension_declaration(const Captures& caps) {
  auto dims = dim_pairs(caps);
  if (!dims || dims->empty()) return {};
  DimensionDeclaration d;
  for (const auto& [param, value] : *dims) {
    if (value < 1) return {std::nullopt, "bad-dimension"};
    for (const auto& [p, v] : d.dims) {
      if (p == param) return {};
    }
    d.dims.emplace_back(param, value);
  }
  return {std::move(d), {}};
}

Outcome interpret(const std::string& type, const Captures& caps, const ParseContext& ctx) {
  if (type == "undo") return {UndoCommand{}, {}};
  if (type == "greeting") return {Greeting{}, {}};
  if (type == "bye") return {Goodbye{}, {}};
  if (type == "cancel") return {Cancel{}, {}};
  if (type == "save-accept") return {SaveAccept{}, {}};
  if (type == "save-decline") return {SaveDecline{}, {}};
  if (type == "yes") return {YesNoAnswer{true}, {}};
  if (type == "no") return {YesNoAnswer{false}, {}};
  if (type == "name") {
    if (auto n = capture(caps, "name")) return {NameDeclaration{*n}, {}};
    return {};
  }
  if (type == "dims") return dimension_declaration(caps);
  if (type == "build") return build_instruction(caps, ctx);
  if (type == "answer") return slot_answer(caps, ctx);
  throw Error(Errc::ParseError, "grammar names unknown message type '" + type + "'");
}

std::string indicator_phrase(const std::string& ind) {
  std::string words = ind;
  std::replace(words.begin(), words.end(), '-', ' ');
  if (std::count(ind.begin(), ind.end(), '-') == 2) words += " corner";
  return words;
}

std::string_view relation_phrase(Direction d) {
  switch (d) {
    case Direction::Up: return "on top of";
    case Direction::Down: return "under";
    case Direction::Left: return "to the left of";
    case Direction::Right: return "to the right of";
    case Direction::Front: return "in front of";
    case Direction::Behind: return "behind";
  }
  return "";
}

}  // namespace

std::string_view to_string(DialogueTag t) { return kTagNames[static_cast<std::size_t>(t)]; }

std::optional<DialogueTag> parse_dialogue_tag(std::string_view s) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == s) return static_cast<DialogueTag>(i);
  }
  return std::nullopt;
}

ParseContext ParseContext::from(DialogueTag state, std::optional<std::string> pending_slot,
                                const InstanceRegistry& registry, const Repository& repo) {
  ParseContext ctx;
  ctx.state = state;
  ctx.pending_slot = std::move(pending_slot);
  for (const auto& inst : registry.all()) {
    if (inst.live) ctx.referents.push_back({inst.id, inst.kind, inst.color});
  }
  ctx.schemas = repo.schemas();
  return ctx;
}

std::string render(const ParsedMessage& m) {
  struct Visitor {
    std::string operator()(const BuildInstruction& b) const { return render(b.form); }
    std::string operator()(const UndoCommand&) const { return "undo"; }
    std::string operator()(const SaveAccept&) const { return "save-accept"; }
    std::string operator()(const SaveDecline&) const { return "save-decline"; }
    std::string operator()(const NameDeclaration& n) const { return "name(" + n.name + ")"; }
    std::string operator()(const DimensionDeclaration& d) const {
      std::string s = "dims(";
      for (std::size_t i = 0; i < d.dims.size(); ++i) {
        if (i) s += ", ";
        s += d.dims[i].first + "=" + std::to_string(d.dims[i].second);
      }
      return s + ")";
    }
    std::string operator()(const YesNoAnswer& a) const { return a.yes ? "yes" : "no"; }
    std::string operator()(const SlotAnswer& a) const {
      std::string v = std::holds_alternative<int>(a.value)
                          ? std::to_string(std::get<int>(a.value))
                          : std::string(to_string(std::get<Color>(a.value)));
      return "answer(" + a.slot + "=" + v + ")";
    }
    std::string operator()(const Greeting&) const { return "greeting"; }
    std::string operator()(const Goodbye&) const { return "goodbye"; }
    std::string operator()(const Cancel&) const { return "cancel"; }
    std::string operator()(const Unknown&) const { return "unknown"; }
  };
  return std::visit(Visitor{}, m);
}

ParsedMessage parse(std::string_view utterance, const ParseContext& ctx, const Grammar& grammar) {
  auto tokens = tokenize(utterance);
  Unknown unknown{std::string(utterance), {}};
  if (tokens.empty()) return unknown;
  auto classes = lexical_classes(ctx, grammar);
  for (const auto& tpl : grammar.templates()) {
    if (tpl.state && *tpl.state != to_string(ctx.state)) continue;
    for (const auto& caps : grammar.match(tpl, tokens, classes)) {
      Outcome o = interpret(tpl.type, caps, ctx);
      if (o.message) return std::move(*o.message);
      if (unknown.hint.empty()) unknown.hint = o.hint;
    }
  }
  return unknown;
}

std::string render_canonical(const InstructionForm& form) {
  if (!form.color || std::any_of(form.dims.begin(), form.dims.end(),
                                 [](const DimSlot& d) { return !d.value; })) {
    throw Error(Errc::IncompleteForm, "cannot render incomplete form " + render(form));
  }
  std::string color(to_string(*form.color));
  bool vowel = std::string_view("aeiou").find(color[0]) != std::string_view::npos;
  std::string s = std::string("build ") + (vowel ? "an " : "a ") + color + " " + form.kind;
  for (std::size_t i = 0; i < form.dims.size(); ++i) {
    s += (i == 0 ? " of " : " and ") + form.dims[i].param + " " +
         std::to_string(*form.dims[i].value);
  }
  if (const auto* a = std::get_if<AbsolutePlacement>(&form.placement)) {
    s += " at " + std::to_string(a->pos.x) + " " + std::to_string(a->pos.y) + " " +
         std::to_string(a->pos.z);
  } else if (const auto* r = std::get_if<RelativePlacement>(&form.placement)) {
    s += " " + std::string(relation_phrase(r->direction));
    if (r->indicator != default_indicator(r->ref.kind, r->direction)) {
      s += " the " + indicator_phrase(r->indicator) + " of";
    }
    s += " the " + r->ref.kind;
  }
  return s;
}

std::vector<std::string> lexicon(const ParseContext& ctx, const Grammar& grammar) {
  std::set<std::string> words(grammar.literals().begin(), grammar.literals().end());
  for (Color c : kAllColors) words.insert(std::string(to_string(c)));
  for (const auto& s : ctx.schemas) words.insert(s.kind);
  for (auto w : kNumberWords) words.insert(std::string(w));
  for (auto w : kParams) words.insert(std::string(w));
  for (const auto& [w, p] : measures()) words.insert(w);
  for (auto w : {"bottom", "top", "left", "right", "front", "back", "corner"}) words.insert(w);
  return {words.begin(), words.end()};
}

}  // namespace cobuild

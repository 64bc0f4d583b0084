// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cobuild {

/// Lowercases, drops apostrophes, turns every other non-alphanumeric
/// character into a space and splits on whitespace.
std::vector<std::string> tokenize(std::string_view text);

using Captures = std::vector<std::pair<std::string, std::string>>;

/// A lexical class matcher: given tokens and a start index, returns every
/// (tokens consumed, normalized value) it accepts, most preferred first.
using ClassMatcher = std::function<std::vector<std::pair<std::size_t, std::string>>(
    const std::vector<std::string>& tokens, std::size_t pos)>;

struct PatternNode;

/// Template grammar loaded from text.
///
///   version 1
///   rule <name> : <pattern>                  alternatives: repeat the rule line
///   template <type> [@<state>] : <pattern>   tried in file order
///
/// Pattern syntax: `word`, `(a | b c)`, `[optional]`, `<class>` or
/// `<class:capture>`, `{rule}`, `@key=value` (emits a capture), and the
/// postfix operators `?`, `*`, `+`.
class Grammar {
 public:
  struct Template {
    std::string type;
    std::optional<std::string> state;
    std::string source;
    std::shared_ptr<const PatternNode> pattern;
  };

  struct Match {
    const Template* tpl = nullptr;
    Captures captures;
  };

  static const Grammar& builtin();
  /// Throws Error{ParseError} with the offending line.
  static Grammar parse(std::string_view text);

  int version() const noexcept { return version_; }
  const std::vector<Template>& templates() const noexcept { return templates_; }

  /// Every full-length match of `tpl`, in preference order.
  std::vector<Captures> match(const Template& tpl, const std::vector<std::string>& tokens,
                              const std::map<std::string, ClassMatcher>& classes) const;

  /// Literal words appearing anywhere in the grammar.
  const std::set<std::string>& literals() const noexcept { return literals_; }
  /// Lexical classes referenced by the grammar.
  const std::set<std::string>& classes() const noexcept { return class_names_; }

 private:
  int version_ = 0;
  std::vector<Template> templates_;
  std::map<std::string, std::vector<std::shared_ptr<const PatternNode>>> rules_;
  std::set<std::string> literals_;
  std::set<std::string> class_names_;
};

}  // namespace cobuild

// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace cobuild {

/// Builder reply templates, one `key = text` per line, with `{name}`
/// placeholders. The bundled file is compiled into the library.
class Replies {
 public:
  static const Replies& builtin();
  /// Throws Error{ParseError} on malformed lines.
  static Replies parse(std::string_view text);

  bool has(std::string_view key) const { return templates_.count(std::string(key)) != 0; }
  /// Throws Error{ParseError} for an unknown key.
  const std::string& raw(std::string_view key) const;
  std::string format(std::string_view key,
                     const std::map<std::string, std::string>& vars = {}) const;
  /// Inverse of format: finds the template inside `text` and returns the
  /// placeholder values, or nullopt if it does not occur.
  std::optional<std::map<std::string, std::string>> match(std::string_view key,
                                                          std::string_view text) const;

 private:
  std::map<std::string, std::string> templates_;
};

/// Text of the bundled data files.
std::string_view builtin_replies_text();
std::string_view builtin_grammar_text();

}  // namespace cobuild

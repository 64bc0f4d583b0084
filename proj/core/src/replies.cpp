// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/replies.hpp"

#include <regex>
#include <sstream>
#include <vector>

#include "cobuild/error.hpp"

namespace cobuild {

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

const Replies& Replies::builtin() {
  static const Replies replies = parse(builtin_replies_text());
  return replies;
}

Replies Replies::parse(std::string_view text) {
  Replies r;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::ParseError, "replies line " + std::to_string(lineno) + ": expected '='");
    }
    r.templates_[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return r;
}

const std::string& Replies::raw(std::string_view key) const {
  auto it = templates_.find(std::string(key));
  if (it == templates_.end()) throw Error(Errc::ParseError, "no reply template '" + std::string(key) + "'");
  return it->second;
}

std::string Replies::format(std::string_view key,
                            const std::map<std::string, std::string>& vars) const {
  const std::string& tpl = raw(key);
  std::string out;
  for (std::size_t i = 0; i < tpl.size(); ++i) {
    if (tpl[i] == '{') {
      auto close = tpl.find('}', i);
      if (close != std::string::npos) {
        auto it = vars.find(tpl.substr(i + 1, close - i - 1));
        if (it != vars.end()) {
          out += it->second;
          i = close;
          continue;
        }
      }
    }
    out += tpl[i];
  }
  return out;
}

std::optional<std::map<std::string, std::string>> Replies::match(std::string_view key,
                                                                std::string_view text) const {
  const std::string& tpl = raw(key);
  std::string pattern;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < tpl.size(); ++i) {
    if (tpl[i] == '{') {
      auto close = tpl.find('}', i);
      if (close != std::string::npos) {
        names.push_back(tpl.substr(i + 1, close - i - 1));
        pattern += close + 1 == tpl.size() ? "(.+)" : "(.+?)";
        i = close;
        continue;
      }
    }
    if (std::string_view(R"(\^$.|?*+()[]{})").find(tpl[i]) != std::string_view::npos) {
      pattern += '\\';
    }
    pattern += tpl[i];
  }
  std::smatch m;
  std::string subject(text);
  if (!std::regex_search(subject, m, std::regex(pattern))) return std::nullopt;
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = m[i + 1].str();
  return out;
}

}  // namespace cobuild

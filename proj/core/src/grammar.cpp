// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/grammar.hpp"

#include <cctype>
#include <sstream>

#include "cobuild/error.hpp"
#include "cobuild/replies.hpp"

namespace cobuild {

struct PatternNode {
  enum class Kind { Word, Class, Rule, Emit, Seq, Alt, Repeat };
  Kind kind = Kind::Seq;
  std::string text;     // word, class name, rule name, or emit key
  std::string capture;  // class capture name, or emit value
  std::vector<std::shared_ptr<const PatternNode>> children;
  int min = 0;
  int max = 1;  // -1 = unbounded
};

namespace {

using NodePtr = std::shared_ptr<const PatternNode>;

constexpr std::size_t kMaxStates = 4096;

class PatternParser {
 public:
  PatternParser(std::string_view src, std::set<std::string>& literals,
                std::set<std::string>& classes)
      : src_(src), literals_(literals), classes_(classes) {}

  NodePtr parse() {
    NodePtr n = alternatives();
    skip_ws();
    if (pos_ != src_.size()) error("unexpected '" + std::string(1, src_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw Error(Errc::ParseError, "pattern '" + std::string(src_) + "': " + msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '-' ||
            src_[pos_] == '_' || src_[pos_] == '+')) {
      ++pos_;
    }
    if (start == pos_) error("expected a name");
    return std::string(src_.substr(start, pos_ - start));
  }

  NodePtr alternatives() {
    auto alt = std::make_shared<PatternNode>();
    alt->kind = PatternNode::Kind::Alt;
    alt->children.push_back(sequence());
    while (peek('|')) {
      ++pos_;
      alt->children.push_back(sequence());
    }
    if (alt->children.size() == 1) return alt->children.front();
    return alt;
  }

  NodePtr sequence() {
    auto seq = std::make_shared<PatternNode>();
    seq->kind = PatternNode::Kind::Seq;
    while (true) {
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] == '|' || src_[pos_] == ')' || src_[pos_] == ']') {
        break;
      }
      seq->children.push_back(postfix(atom()));
    }
    return seq;
  }

  NodePtr postfix(NodePtr n) {
    if (pos_ < src_.size() && (src_[pos_] == '?' || src_[pos_] == '*' || src_[pos_] == '+')) {
      auto rep = std::make_shared<PatternNode>();
      rep->kind = PatternNode::Kind::Repeat;
      rep->min = src_[pos_] == '+' ? 1 : 0;
      rep->max = src_[pos_] == '?' ? 1 : -1;
      rep->children.push_back(std::move(n));
      ++pos_;
      return rep;
    }
    return n;
  }

  NodePtr atom() {
    skip_ws();
    char c = src_[pos_];
    if (c == '(' || c == '[') {
      ++pos_;
      NodePtr inner = alternatives();
      expect(c == '(' ? ')' : ']');
      if (c == '(') return inner;
      auto opt = std::make_shared<PatternNode>();
      opt->kind = PatternNode::Kind::Repeat;
      opt->min = 0;
      opt->max = 1;
      opt->children.push_back(std::move(inner));
      return opt;
    }
    auto n = std::make_shared<PatternNode>();
    if (c == '<') {
      ++pos_;
      n->kind = PatternNode::Kind::Class;
      n->text = identifier();
      n->capture = n->text;
      if (peek(':')) {
        ++pos_;
        n->capture = identifier();
      }
      expect('>');
      classes_.insert(n->text);
      return n;
    }
    if (c == '{') {
      ++pos_;
      n->kind = PatternNode::Kind::Rule;
      n->text = identifier();
      expect('}');
      return n;
    }
    if (c == '@') {
      ++pos_;
      n->kind = PatternNode::Kind::Emit;
      n->text = identifier();
      expect('=');
      n->capture = identifier();
      return n;
    }
    n->kind = PatternNode::Kind::Word;
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) error("unexpected '" + std::string(1, c) + "'");
    n->text = std::string(src_.substr(start, pos_ - start));
    for (auto& ch : n->text) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    literals_.insert(n->text);
    return n;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::set<std::string>& literals_;
  std::set<std::string>& classes_;
};

struct State {
  std::size_t pos;
  Captures captures;
};

class Matcher {
 public:
  Matcher(const std::map<std::string, std::vector<NodePtr>>& rules,
          const std::map<std::string, ClassMatcher>& classes,
          const std::vector<std::string>& tokens)
      : rules_(rules), classes_(classes), tokens_(tokens) {}

  std::vector<State> run(const PatternNode& n, const State& in, int depth = 0) {
    if (depth > 64) throw Error(Errc::ParseError, "grammar recursion too deep");
    std::vector<State> out;
    switch (n.kind) {
      case PatternNode::Kind::Word:
        if (in.pos < tokens_.size() && tokens_[in.pos] == n.text) out.push_back({in.pos + 1, in.captures});
        break;
      case PatternNode::Kind::Class: {
        auto it = classes_.find(n.text);
        if (it == classes_.end()) throw Error(Errc::ParseError, "no lexical class <" + n.text + ">");
        if (in.pos >= tokens_.size()) break;
        for (auto& [used, value] : it->second(tokens_, in.pos)) {
          State s{in.pos + used, in.captures};
          s.captures.emplace_back(n.capture, value);
          out.push_back(std::move(s));
        }
        break;
      }
      case PatternNode::Kind::Rule: {
        auto it = rules_.find(n.text);
        if (it == rules_.end()) throw Error(Errc::ParseError, "no rule {" + n.text + "}");
        for (const auto& alt : it->second) append(out, run(*alt, in, depth + 1));
        break;
      }
      case PatternNode::Kind::Emit: {
        State s = in;
        s.captures.emplace_back(n.text, n.capture);
        out.push_back(std::move(s));
        break;
      }
      case PatternNode::Kind::Seq: {
        std::vector<State> states{in};
        for (const auto& child : n.children) {
          std::vector<State> next;
          for (const auto& s : states) append(next, run(*child, s, depth + 1));
          states = std::move(next);
          if (states.empty()) break;
        }
        out = std::move(states);
        break;
      }
      case PatternNode::Kind::Alt:
        for (const auto& child : n.children) append(out, run(*child, in, depth + 1));
        break;
      case PatternNode::Kind::Repeat:
        repeat(n, in, 0, out, depth);
        break;
    }
    if (out.size() > kMaxStates) out.resize(kMaxStates);
    return out;
  }

 private:
  static void append(std::vector<State>& out, std::vector<State>&& more) {
    for (auto& s : more) out.push_back(std::move(s));
  }

  // Greedy: longer repetitions come first.
  void repeat(const PatternNode& n, const State& in, int count, std::vector<State>& out,
              int depth) {
    if (n.max < 0 || count < n.max) {
      for (auto& s : run(*n.children.front(), in, depth + 1)) {
        if (s.pos == in.pos) continue;  // no progress
        repeat(n, s, count + 1, out, depth + 1);
      }
    }
    if (count >= n.min) out.push_back(in);
  }

  const std::map<std::string, std::vector<NodePtr>>& rules_;
  const std::map<std::string, ClassMatcher>& classes_;
  const std::vector<std::string>& tokens_;
};

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    unsigned char u = static_cast<unsigned char>(ch);
    if (std::isalnum(u)) {
      cur += static_cast<char>(std::tolower(u));
    } else if (ch == '\'') {
      continue;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

const Grammar& Grammar::builtin() {
  static const Grammar g = parse(builtin_grammar_text());
  return g;
}

Grammar Grammar::parse(std::string_view text) {
  Grammar g;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(Errc::ParseError, "grammar line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream words(t);
    std::string head;
    words >> head;
    if (head == "version") {
      if (!(words >> g.version_)) fail("bad version");
      continue;
    }
    auto colon = t.find(" : ");
    if (colon == std::string::npos) fail("expected ' : '");
    std::istringstream lhs(t.substr(0, colon));
    std::string keyword, name, state;
    lhs >> keyword >> name;
    lhs >> state;
    std::string body = trim(t.substr(colon + 3));
    try {
      NodePtr pattern = PatternParser(body, g.literals_, g.class_names_).parse();
      if (keyword == "rule") {
        g.rules_[name].push_back(pattern);
      } else if (keyword == "template") {
        Template tpl{name, std::nullopt, body, pattern};
        if (!state.empty()) {
          if (state[0] != '@') fail("state guard must start with '@'");
          tpl.state = state.substr(1);
        }
        g.templates_.push_back(std::move(tpl));
      } else {
        fail("unknown keyword '" + keyword + "'");
      }
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (g.version_ <= 0) throw Error(Errc::ParseError, "grammar has no version line");
  return g;
}

std::vector<Captures> Grammar::match(const Template& tpl, const std::vector<std::string>& tokens,
                                     const std::map<std::string, ClassMatcher>& classes) const {
  Matcher m(rules_, classes, tokens);
  std::vector<Captures> out;
  for (auto& s : m.run(*tpl.pattern, State{0, {}})) {
    if (s.pos == tokens.size()) out.push_back(std::move(s.captures));
  }
  return out;
}

}  // namespace cobuild

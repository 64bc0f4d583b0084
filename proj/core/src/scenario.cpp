// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "cobuild/error.hpp"

namespace cobuild {
namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

BlockList parse_blocks(const std::string& text, int line) {
  BlockList out;
  if (lower(text) == "empty") return out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ',')) {
    std::istringstream in(item);
    std::string color;
    Position p;
    if (!(in >> color >> p.x >> p.y >> p.z) || !parse_color(color)) {
      throw Error(Errc::ParseError,
                  "line " + std::to_string(line) + ": bad block '" + trim(item) + "'");
    }
    out.push_back({p, *parse_color(color)});
  }
  return out;
}

std::string block_text(const Block& b) {
  return std::string(to_string(b.color)) + " " + std::to_string(b.pos.x) + " " +
         std::to_string(b.pos.y) + " " + std::to_string(b.pos.z);
}

std::string blocks_text(BlockList blocks) {
  if (blocks.empty()) return "empty";
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return YxzLess{}(a.pos, b.pos); });
  std::string s;
  for (const auto& b : blocks) s += (s.empty() ? "" : ", ") + block_text(b);
  return s;
}

}  // namespace

ScenarioScript ScenarioScript::parse(std::string_view text) {
  ScenarioScript script;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("region ", 0) == 0) {
      std::istringstream r(t.substr(7));
      auto& d = script.dims;
      if (!(r >> d.width >> d.height >> d.depth) || d.width < 1 || d.height < 1 || d.depth < 1) {
        throw Error(Errc::ParseError, "line " + std::to_string(line) + ": bad region");
      }
      continue;
    }
    auto colon = t.find(':');
    if (colon == std::string::npos) {
      throw Error(Errc::ParseError, "line " + std::to_string(line) + ": expected 'key: value'");
    }
    std::string key = trim(t.substr(0, colon));
    std::string value = trim(t.substr(colon + 1));
    ScenarioStep step;
    step.line = line;
    step.text = value;
    if (key == "architect") {
      step.kind = ScenarioStep::Kind::ArchitectSays;
    } else if (key == "builder") {
      step.kind = ScenarioStep::Kind::ExpectBuilderSays;
    } else if (key == "world") {
      step.kind = ScenarioStep::Kind::ExpectWorldEquals;
      step.blocks = parse_blocks(value, line);
    } else if (key == "repository") {
      step.kind = ScenarioStep::Kind::ExpectRepositoryHas;
    } else {
      throw Error(Errc::ParseError, "line " + std::to_string(line) + ": unknown step '" + key + "'");
    }
    script.steps.push_back(std::move(step));
  }
  return script;
}

ScenarioScript ScenarioScript::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

ScenarioResult run_script(const ScenarioScript& script, Service& service) {
  ScenarioResult result;
  std::string id = service.create_session(SessionConfig{script.dims, std::nullopt});
  std::string last_builder = service.transcript(id).back().at("text").get<std::string>();
  auto fail = [&](std::size_t i, std::string expected, std::string actual, std::string diff = {}) {
    result.failure = StepFailure{i, script.steps[i].line, std::move(expected), std::move(actual),
                                 std::move(diff)};
  };
  for (std::size_t i = 0; i < script.steps.size() && !result.failure; ++i) {
    const auto& step = script.steps[i];
    switch (step.kind) {
      case ScenarioStep::Kind::ArchitectSays: {
        MessageReply reply = service.post_message(id, step.text);
        last_builder.clear();
        for (const auto& r : reply.replies) last_builder += (last_builder.empty() ? "" : " ") + r;
        break;
      }
      case ScenarioStep::Kind::ExpectBuilderSays:
        if (lower(last_builder).find(lower(step.text)) == std::string::npos) {
          fail(i, "builder says \"" + step.text + "\"", last_builder);
        }
        break;
      case ScenarioStep::Kind::ExpectWorldEquals: {
        BlockList actual = service.snapshot(id);
        auto key = [](const Block& b) { return block_text(b); };
        std::set<std::string> want, have;
        for (const auto& b : step.blocks) want.insert(key(b));
        for (const auto& b : actual) have.insert(key(b));
        if (want != have) {
          std::string missing, extra;
          for (const auto& w : want) {
            if (!have.count(w)) missing += (missing.empty() ? "" : ", ") + w;
          }
          for (const auto& h : have) {
            if (!want.count(h)) extra += (extra.empty() ? "" : ", ") + h;
          }
          fail(i, blocks_text(step.blocks), blocks_text(actual),
               "missing: " + (missing.empty() ? "none" : missing) +
                   "; unexpected: " + (extra.empty() ? "none" : extra));
        }
        break;
      }
      case ScenarioStep::Kind::ExpectRepositoryHas:
        if (!service.repository().contains(step.text)) {
          std::string names;
          for (const auto& s : service.repository().schemas()) {
            names += (names.empty() ? "" : ", ") + s.kind;
          }
          fail(i, "repository has " + step.text, names);
        }
        break;
    }
  }
  result.passed = !result.failure;
  result.transcript = service.transcript(id);
  result.final_snapshot = service.snapshot(id);
  return result;
}

std::string describe(const StepFailure& f) {
  std::string s = "step " + std::to_string(f.index + 1) + " (line " + std::to_string(f.line) +
                  ") failed\n  expected: " + f.expected + "\n  actual:   " + f.actual;
  if (!f.diff.empty()) s += "\n  diff:     " + f.diff;
  return s;
}

}  // namespace cobuild

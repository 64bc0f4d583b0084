// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cobuild/json_io.hpp"
#include "cobuild/session.hpp"

namespace cobuild {

/// Line-oriented test script:
///
///   # comment
///   region 11 9 11
///   architect: build a red tower
///   builder: tall                       (substring of the last builder turn)
///   world: red 5 0 5, red 5 1 5         (exact block set; "world: empty")
///   repository: l
struct ScenarioStep {
  enum class Kind { ArchitectSays, ExpectBuilderSays, ExpectWorldEquals, ExpectRepositoryHas };
  Kind kind;
  std::string text;
  BlockList blocks;
  int line = 0;
};

struct ScenarioScript {
  RegionDims dims;
  std::vector<ScenarioStep> steps;

  /// Throws Error{ParseError} naming the line.
  static ScenarioScript parse(std::string_view text);
  /// Throws Error{IoError} or Error{ParseError}.
  static ScenarioScript load(const std::filesystem::path& path);
};

struct StepFailure {
  std::size_t index = 0;
  int line = 0;
  std::string expected;
  std::string actual;
  /// "missing: ...; unexpected: ..." for world expectations.
  std::string diff;
};

struct ScenarioResult {
  bool passed = false;
  std::optional<StepFailure> failure;
  std::vector<Json> transcript;
  BlockList final_snapshot;
};

/// Runs the script in a new session of `service`.
ScenarioResult run_script(const ScenarioScript& script, Service& service);

std::string describe(const StepFailure& f);

}  // namespace cobuild

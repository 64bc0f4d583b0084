// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cobuild {

enum class Errc {
  OutOfBounds,
  Occupied,
  Unsupported,
  NothingToUndo,
  UnknownKind,
  IncompleteForm,
  NonPositiveDimension,
  InvalidIndicator,
  NoRoom,
  UnknownReference,
  StalePlan,
  NoCover,
  TooLarge,
  NoConsistentHypothesis,
  ContradictoryAnswer,
  BadConfig,
  UnknownSession,
  Busy,
  SessionStarted,
  UnanswerableQuestion,
  ParseError,
  IoError,
};

std::string_view errc_name(Errc code);

/// Every library failure that is not an ordinary outcome (plan failures and
/// unknown utterances are values, not exceptions) is reported as an Error.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cobuild

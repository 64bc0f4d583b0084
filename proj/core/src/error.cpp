// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/error.hpp"

namespace cobuild {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::Occupied: return "Occupied";
    case Errc::Unsupported: return "Unsupported";
    case Errc::NothingToUndo: return "NothingToUndo";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::IncompleteForm: return "IncompleteForm";
    case Errc::NonPositiveDimension: return "NonPositiveDimension";
    case Errc::InvalidIndicator: return "InvalidIndicator";
    case Errc::NoRoom: return "NoRoom";
    case Errc::UnknownReference: return "UnknownReference";
    case Errc::StalePlan: return "StalePlan";
    case Errc::NoCover: return "NoCover";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NoConsistentHypothesis: return "NoConsistentHypothesis";
    case Errc::ContradictoryAnswer: return "ContradictoryAnswer";
    case Errc::BadConfig: return "BadConfig";
    case Errc::UnknownSession: return "UnknownSession";
    case Errc::Busy: return "Busy";
    case Errc::SessionStarted: return "SessionStarted";
    case Errc::UnanswerableQuestion: return "UnanswerableQuestion";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace cobuild

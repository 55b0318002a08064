// Copyright 2026 The effectkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace effectkit {

enum class Errc {
  InvalidArgument,
  DimMismatch,
  NotFinite,
  NotHermitian,
  ConvergenceFailure,
  NotPositive,
  ExceedsIdentity,
  SumNotIdentity,
  NotDimTwo,
  TraceNotOne,
  UnknownLabel,
  DuplicateLabel,
  SumExceedsIdentity,
  FrameDeficient,
  ValuesInconsistent,
  ProbabilityDeficit,
  Mismatch,
  NotUnitVectors,
  DegenerateLambda,
  ParallelVectors,
  BadContext,
  BadRelation,
  NonIntegerCoefficients,
  Parse,
  Io,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::NotFinite: return "NotFinite";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::NotPositive: return "NotPositive";
    case Errc::ExceedsIdentity: return "ExceedsIdentity";
    case Errc::SumNotIdentity: return "SumNotIdentity";
    case Errc::NotDimTwo: return "NotDimTwo";
    case Errc::TraceNotOne: return "TraceNotOne";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::SumExceedsIdentity: return "SumExceedsIdentity";
    case Errc::FrameDeficient: return "FrameDeficient";
    case Errc::ValuesInconsistent: return "ValuesInconsistent";
    case Errc::ProbabilityDeficit: return "ProbabilityDeficit";
    case Errc::Mismatch: return "Mismatch";
    case Errc::NotUnitVectors: return "NotUnitVectors";
    case Errc::DegenerateLambda: return "DegenerateLambda";
    case Errc::ParallelVectors: return "ParallelVectors";
    case Errc::BadContext: return "BadContext";
    case Errc::BadRelation: return "BadRelation";
    case Errc::NonIntegerCoefficients: return "NonIntegerCoefficients";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace effectkit

// Copyright 2026 The Persuade Authors
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
#include <string_view>

namespace persuade {

// Every failure raised by the library carries one of these codes so that
// callers (and the CLI's exit-code mapping) can branch without string
// matching.
enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kZeroProbabilitySignal,
  kInfeasibleInstance,
  kNumericFailure,
  kStateSpaceTooLarge,
  kBelowThreshold,
  kInvalidConfig,
  kUnboundPlaceholder,
  kMissingTag,
  kScoreOutOfRange,
  kScoreNotInteger,
  kTransport,
  kRateLimited,
  kExhaustedRetries,
  kLogprobsUnsupported,
  kTokenNotFound,
  kParseError,
  kDuplicateId,
  kOutOfRange,
  kAgentFailure,
  kInvalidTranscript,
  kIoError,
  kZeroVector,
  kEmbedderFailure,
  kMissingConfidence,
  kUnparseableClassification,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroProbabilitySignal: return "ZeroProbabilitySignal";
    case ErrorCode::kInfeasibleInstance: return "InfeasibleInstance";
    case ErrorCode::kNumericFailure: return "NumericFailure";
    case ErrorCode::kStateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::kBelowThreshold: return "BelowThreshold";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kUnboundPlaceholder: return "UnboundPlaceholder";
    case ErrorCode::kMissingTag: return "MissingTag";
    case ErrorCode::kScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::kScoreNotInteger: return "ScoreNotInteger";
    case ErrorCode::kTransport: return "Transport";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kExhaustedRetries: return "ExhaustedRetries";
    case ErrorCode::kLogprobsUnsupported: return "LogprobsUnsupported";
    case ErrorCode::kTokenNotFound: return "TokenNotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kAgentFailure: return "AgentFailure";
    case ErrorCode::kInvalidTranscript: return "InvalidTranscript";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kEmbedderFailure: return "EmbedderFailure";
    case ErrorCode::kMissingConfidence: return "MissingConfidence";
    case ErrorCode::kUnparseableClassification: return "UnparseableClassification";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace persuade

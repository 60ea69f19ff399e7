// Copyright (C) 2026 The sepoco Authors. All Rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sepoco/error.hpp"

namespace sepoco {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDegenerateDirection: return "DegenerateDirection";
    case ErrorCode::kInvalidDelta: return "InvalidDelta";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kIterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kBlockOverflow: return "BlockOverflow";
    case ErrorCode::kNumericOverflow: return "NumericOverflow";
    case ErrorCode::kInvalidScenario: return "InvalidScenario";
    case ErrorCode::kInfeasibleCertificate: return "InfeasibleCertificate";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

ConfigError::ConfigError(std::string key, std::int64_t line, const std::string& message)
    : Error(ErrorCode::kConfigError,
            "key '" + key + "'" + (line > 0 ? " at line " + std::to_string(line) : "") + ": " +
                message),
      key_(std::move(key)),
      line_(line) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace sepoco

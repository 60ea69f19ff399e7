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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sepoco {

enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument,
  kDimensionMismatch,
  kDegenerateDirection,
  kInvalidDelta,
  kUnsupported,
  kIterationCapExceeded,
  kInvalidConfig,
  kBlockOverflow,
  kNumericOverflow,
  kInvalidScenario,
  kInfeasibleCertificate,
  kDegenerateFit,
  kConfigError,
  kIoError,
  kInternal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Config failures carry the offending key and 1-based line (0 when the key is
// missing altogether).
class ConfigError : public Error {
 public:
  ConfigError(std::string key, std::int64_t line, const std::string& message);
  const std::string& key() const noexcept { return key_; }
  std::int64_t line() const noexcept { return line_; }

 private:
  std::string key_;
  std::int64_t line_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace sepoco

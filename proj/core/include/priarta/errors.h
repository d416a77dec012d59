// Copyright 2026 The PriArTa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIARTA_ERRORS_H_
#define PRIARTA_ERRORS_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"

namespace priarta {

// Machine-readable failure codes. Every absl::Status produced by this library
// carries one of these as a payload, so callers (and the wire protocol) can
// dispatch on the code instead of parsing messages.
enum class ErrorCode {
  kOk,
  kNumericInput,
  kConvergence,
  kNotPsd,
  kShapeMismatch,
  kInvalidParameter,
  kEmptyInput,
  kInsufficientSamples,
  kInsufficientData,
  kProtocolOrder,
  kSpecMismatch,
  kFrameTruncated,
  kUnknownMessage,
  kFrameTooLarge,
  kMalformedPayload,
  kUnsupportedVersion,
  kNoCandidates,
  kParseError,
  kValidation,
  kTransport,
  kInternal,
};

// Stable upper-snake-case name, e.g. "PROTOCOL_ORDER".
std::string_view ErrorCodeName(ErrorCode code);
std::optional<ErrorCode> ErrorCodeFromName(std::string_view name);

absl::Status MakeError(ErrorCode code, std::string_view message);

// kOk for an ok status; kInternal for statuses not created by MakeError.
ErrorCode GetErrorCode(const absl::Status& status);

}  // namespace priarta

#endif  // PRIARTA_ERRORS_H_

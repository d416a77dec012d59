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

#include "priarta/errors.h"

#include <array>
#include <string>
#include <utility>

#include "absl/strings/cord.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

constexpr std::string_view kPayloadUrl = "type.priarta/error_code";

constexpr std::array<std::pair<ErrorCode, std::string_view>, 21> kNames = {{
    {ErrorCode::kOk, "OK"},
    {ErrorCode::kNumericInput, "NUMERIC_INPUT"},
    {ErrorCode::kConvergence, "CONVERGENCE"},
    {ErrorCode::kNotPsd, "NOT_PSD"},
    {ErrorCode::kShapeMismatch, "SHAPE_MISMATCH"},
    {ErrorCode::kInvalidParameter, "INVALID_PARAMETER"},
    {ErrorCode::kEmptyInput, "EMPTY_INPUT"},
    {ErrorCode::kInsufficientSamples, "INSUFFICIENT_SAMPLES"},
    {ErrorCode::kInsufficientData, "INSUFFICIENT_DATA"},
    {ErrorCode::kProtocolOrder, "PROTOCOL_ORDER"},
    {ErrorCode::kSpecMismatch, "SPEC_MISMATCH"},
    {ErrorCode::kFrameTruncated, "FRAME_TRUNCATED"},
    {ErrorCode::kUnknownMessage, "UNKNOWN_MESSAGE"},
    {ErrorCode::kFrameTooLarge, "FRAME_TOO_LARGE"},
    {ErrorCode::kMalformedPayload, "MALFORMED_PAYLOAD"},
    {ErrorCode::kUnsupportedVersion, "UNSUPPORTED_VERSION"},
    {ErrorCode::kNoCandidates, "NO_CANDIDATES"},
    {ErrorCode::kParseError, "PARSE_ERROR"},
    {ErrorCode::kValidation, "VALIDATION"},
    {ErrorCode::kTransport, "TRANSPORT"},
    {ErrorCode::kInternal, "INTERNAL"},
}};

absl::StatusCode CanonicalCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk:
      return absl::StatusCode::kOk;
    case ErrorCode::kNumericInput:
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kInvalidParameter:
    case ErrorCode::kEmptyInput:
    case ErrorCode::kMalformedPayload:
    case ErrorCode::kUnknownMessage:
    case ErrorCode::kParseError:
    case ErrorCode::kValidation:
    case ErrorCode::kSpecMismatch:
      return absl::StatusCode::kInvalidArgument;
    case ErrorCode::kNotPsd:
    case ErrorCode::kInsufficientSamples:
    case ErrorCode::kInsufficientData:
    case ErrorCode::kProtocolOrder:
    case ErrorCode::kNoCandidates:
      return absl::StatusCode::kFailedPrecondition;
    case ErrorCode::kFrameTruncated:
      return absl::StatusCode::kDataLoss;
    case ErrorCode::kFrameTooLarge:
      return absl::StatusCode::kResourceExhausted;
    case ErrorCode::kUnsupportedVersion:
      return absl::StatusCode::kUnimplemented;
    case ErrorCode::kTransport:
      return absl::StatusCode::kUnavailable;
    case ErrorCode::kConvergence:
    case ErrorCode::kInternal:
      return absl::StatusCode::kInternal;
  }
  return absl::StatusCode::kInternal;
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "INTERNAL";
}

std::optional<ErrorCode> ErrorCodeFromName(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

absl::Status MakeError(ErrorCode code, std::string_view message) {
  if (code == ErrorCode::kOk) return absl::OkStatus();
  absl::Status status(CanonicalCode(code), std::string(ErrorCodeName(code)) +
                                               ": " + std::string(message));
  status.SetPayload(ToAbsl(kPayloadUrl),
                    absl::Cord(ToAbsl(ErrorCodeName(code))));
  return status;
}

ErrorCode GetErrorCode(const absl::Status& status) {
  if (status.ok()) return ErrorCode::kOk;
  auto payload = status.GetPayload(ToAbsl(kPayloadUrl));
  if (!payload.has_value()) return ErrorCode::kInternal;
  return ErrorCodeFromName(std::string(*payload))
      .value_or(ErrorCode::kInternal);
}

}  // namespace priarta

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

// Buyer/seller message set and its framing.
//
// Frame layout: 4-byte big-endian unsigned payload length, then the payload:
// UTF-8 canonical structured text (see canonical_text.h) of a JSON object
// whose "type" field names the variant. Payloads above 64 MiB are rejected.

#ifndef PRIARTA_PROTOCOL_H_
#define PRIARTA_PROTOCOL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "priarta/encoder.h"
#include "priarta/gaussian_geometry.h"

namespace priarta {

inline constexpr int64_t kProtocolVersion = 1;
inline constexpr uint32_t kMaxFramePayload = 64u << 20;
inline constexpr size_t kFrameHeaderSize = 4;

struct HelloMessage {
  int64_t protocol_version = kProtocolVersion;
  friend bool operator==(const HelloMessage&, const HelloMessage&) = default;
};

struct ModelSpecMessage {
  EncoderSpec encoder;
  friend bool operator==(const ModelSpecMessage&,
                         const ModelSpecMessage&) = default;
};

struct StatsRequestMessage {
  int64_t subset_size = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double clip_radius = 0.0;
  std::string session_id;
  // Seeded (replayable, test-only) when set; secure (OS entropy) otherwise.
  std::optional<uint64_t> seed;
  friend bool operator==(const StatsRequestMessage&,
                         const StatsRequestMessage&) = default;
};

struct StatsResponseMessage {
  Eigen::VectorXd mean;
  // Upper triangle of the covariance, row-major: (0,0), (0,1), ..., (d-1,d-1).
  std::vector<double> covariance_upper;
  int64_t count = 0;
  std::string session_id;
  double sigma_used = 0.0;
  std::string encoder_fingerprint;

  static StatsResponseMessage FromSummary(const GaussianSummary& summary,
                                          std::string session_id,
                                          double sigma_used,
                                          std::string encoder_fingerprint);
  absl::StatusOr<GaussianSummary> ToSummary() const;

  friend bool operator==(const StatsResponseMessage& a,
                         const StatsResponseMessage& b) {
    return a.mean.size() == b.mean.size() && a.mean == b.mean &&
           a.covariance_upper == b.covariance_upper && a.count == b.count &&
           a.session_id == b.session_id && a.sigma_used == b.sigma_used &&
           a.encoder_fingerprint == b.encoder_fingerprint;
  }
};

struct ErrorMessage {
  std::string code;  // ErrorCodeName()
  std::string message;
  std::string session_id;
  friend bool operator==(const ErrorMessage&, const ErrorMessage&) = default;
};

using ProtocolMessage =
    std::variant<HelloMessage, ModelSpecMessage, StatsRequestMessage,
                 StatsResponseMessage, ErrorMessage>;

std::string_view MessageTypeName(const ProtocolMessage& message);

ErrorMessage ErrorFromStatus(const absl::Status& status,
                             std::string session_id);

// Upper-triangular packing; Expand(Pack(S)) == S bit-exactly for symmetric S.
std::vector<double> PackUpperTriangle(const SymmetricMatrix& matrix);
absl::StatusOr<SymmetricMatrix> ExpandUpperTriangle(
    const std::vector<double>& packed);

std::string EncodePayload(const ProtocolMessage& message);
absl::StatusOr<ProtocolMessage> DecodePayload(std::string_view payload);

std::string EncodeFrame(const ProtocolMessage& message);

// Decodes exactly one frame occupying all of `bytes`.
absl::StatusOr<ProtocolMessage> DecodeFrame(std::string_view bytes);

// Payload length from a 4-byte header; FRAME_TOO_LARGE above the limit.
absl::StatusOr<uint32_t> DecodeFrameLength(std::string_view header);

}  // namespace priarta

#endif  // PRIARTA_PROTOCOL_H_

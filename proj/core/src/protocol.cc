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

#include "priarta/protocol.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "priarta/canonical_text.h"
#include "priarta/errors.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

constexpr std::string_view kHello = "HELLO";
constexpr std::string_view kModelSpec = "MODEL_SPEC";
constexpr std::string_view kStatsRequest = "STATS_REQUEST";
constexpr std::string_view kStatsResponse = "STATS_RESPONSE";
constexpr std::string_view kError = "ERROR";

struct PayloadEncoder {
  Json operator()(const HelloMessage& m) const {
    return Json{{"type", kHello}, {"protocol_version", m.protocol_version}};
  }
  Json operator()(const ModelSpecMessage& m) const {
    return Json{{"type", kModelSpec}, {"encoder", m.encoder.ToJson()}};
  }
  Json operator()(const StatsRequestMessage& m) const {
    Json mode = m.seed.has_value() ? Json{{"kind", "seeded"}, {"seed", *m.seed}}
                                   : Json{{"kind", "secure"}};
    return Json{{"type", kStatsRequest},        {"subset_size", m.subset_size},
                {"epsilon", m.epsilon},         {"delta", m.delta},
                {"clip_radius", m.clip_radius}, {"session_id", m.session_id},
                {"mode", std::move(mode)}};
  }
  Json operator()(const StatsResponseMessage& m) const {
    return Json{{"type", kStatsResponse},
                {"mean", VectorToJson(m.mean)},
                {"covariance", m.covariance_upper},
                {"count", m.count},
                {"session_id", m.session_id},
                {"sigma_used", m.sigma_used},
                {"encoder_fingerprint", m.encoder_fingerprint}};
  }
  Json operator()(const ErrorMessage& m) const {
    return Json{{"type", kError},
                {"code", m.code},
                {"message", m.message},
                {"session_id", m.session_id}};
  }
};

absl::StatusOr<ProtocolMessage> DecodeObject(const Json& json) {
  if (!json.is_object()) {
    return MakeError(ErrorCode::kMalformedPayload, "payload is not an object");
  }
  auto type_it = json.find("type");
  if (type_it == json.end() || !type_it->is_string()) {
    return MakeError(ErrorCode::kMalformedPayload, "payload has no type tag");
  }
  const std::string type = type_it->get<std::string>();
  JsonFieldReader reader(json, "");

  if (type == kHello) {
    HelloMessage m;
    m.protocol_version = reader.Int("protocol_version");
    PRIARTA_RETURN_IF_ERROR(reader.Finish(ErrorCode::kMalformedPayload));
    return m;
  }
  if (type == kModelSpec) {
    const Json& encoder = reader.Object("encoder");
    PRIARTA_RETURN_IF_ERROR(reader.Finish(ErrorCode::kMalformedPayload));
    auto spec = EncoderSpec::FromJson(encoder);
    if (!spec.ok()) {
      return MakeError(ErrorCode::kMalformedPayload,
                       ToStd(spec.status().message()));
    }
    return ModelSpecMessage{*std::move(spec)};
  }
  if (type == kStatsRequest) {
    StatsRequestMessage m;
    m.subset_size = reader.Int("subset_size");
    m.epsilon = reader.Double("epsilon");
    m.delta = reader.Double("delta");
    m.clip_radius = reader.Double("clip_radius");
    m.session_id = reader.String("session_id");
    JsonFieldReader mode = reader.Child(reader.Object("mode"), "mode");
    const std::string kind = mode.String("kind");
    if (kind == "seeded") {
      m.seed = mode.Uint("seed");
    } else if (kind != "secure" && reader.ok()) {
      mode.AddError("kind", "expected secure or seeded");
    }
    PRIARTA_RETURN_IF_ERROR(reader.Finish(ErrorCode::kMalformedPayload));
    return m;
  }
  if (type == kStatsResponse) {
    StatsResponseMessage m;
    const std::vector<double> mean = reader.Doubles("mean");
    m.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), mean.size());
    m.covariance_upper = reader.Doubles("covariance");
    m.count = reader.Int("count");
    m.session_id = reader.String("session_id");
    m.sigma_used = reader.Double("sigma_used");
    m.encoder_fingerprint = reader.String("encoder_fingerprint");
    PRIARTA_RETURN_IF_ERROR(reader.Finish(ErrorCode::kMalformedPayload));
    const size_t d = mean.size();
    if (d == 0 || m.covariance_upper.size() != d * (d + 1) / 2) {
      return MakeError(
          ErrorCode::kMalformedPayload,
          StrCat("covariance payload has ", m.covariance_upper.size(),
                 " entries for mean dimension ", d));
    }
    return m;
  }
  if (type == kError) {
    ErrorMessage m;
    m.code = reader.String("code");
    m.message = reader.String("message");
    m.session_id = reader.String("session_id");
    PRIARTA_RETURN_IF_ERROR(reader.Finish(ErrorCode::kMalformedPayload));
    return m;
  }
  return MakeError(ErrorCode::kUnknownMessage,
                   StrCat("unknown message type '", type, "'"));
}

}  // namespace

std::string_view MessageTypeName(const ProtocolMessage& message) {
  constexpr std::string_view kNames[] = {kHello, kModelSpec, kStatsRequest,
                                         kStatsResponse, kError};
  return kNames[message.index()];
}

ErrorMessage ErrorFromStatus(const absl::Status& status,
                             std::string session_id) {
  return ErrorMessage{std::string(ErrorCodeName(GetErrorCode(status))),
                      std::string(status.message()), std::move(session_id)};
}

std::vector<double> PackUpperTriangle(const SymmetricMatrix& matrix) {
  const int d = matrix.dim();
  std::vector<double> out;
  out.reserve(static_cast<size_t>(d) * (d + 1) / 2);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) out.push_back(matrix(i, j));
  }
  return out;
}

absl::StatusOr<SymmetricMatrix> ExpandUpperTriangle(
    const std::vector<double>& packed) {
  int d = 0;
  while (static_cast<size_t>(d + 1) * (d + 2) / 2 <= packed.size()) ++d;
  if (d == 0 || static_cast<size_t>(d) * (d + 1) / 2 != packed.size()) {
    return MakeError(
        ErrorCode::kShapeMismatch,
        StrCat(packed.size(), " is not a triangular number of entries"));
  }
  Eigen::MatrixXd full(d, d);
  size_t k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      full(i, j) = packed[k];
      full(j, i) = packed[k];
      ++k;
    }
  }
  return SymmetricMatrix::Create(full);
}

StatsResponseMessage StatsResponseMessage::FromSummary(
    const GaussianSummary& summary, std::string session_id, double sigma_used,
    std::string encoder_fingerprint) {
  StatsResponseMessage m;
  m.mean = summary.mean();
  m.covariance_upper = PackUpperTriangle(summary.covariance());
  m.count = summary.count();
  m.session_id = std::move(session_id);
  m.sigma_used = sigma_used;
  m.encoder_fingerprint = std::move(encoder_fingerprint);
  return m;
}

absl::StatusOr<GaussianSummary> StatsResponseMessage::ToSummary() const {
  PRIARTA_ASSIGN_OR_RETURN(SymmetricMatrix covariance,
                           ExpandUpperTriangle(covariance_upper));
  return GaussianSummary::Create(mean, covariance, count);
}

std::string EncodePayload(const ProtocolMessage& message) {
  return CanonicalDump(std::visit(PayloadEncoder{}, message));
}

absl::StatusOr<ProtocolMessage> DecodePayload(std::string_view payload) {
  auto json = ParseCanonical(payload);
  if (!json.ok()) {
    return MakeError(ErrorCode::kMalformedPayload,
                     ToStd(json.status().message()));
  }
  return DecodeObject(*json);
}

std::string EncodeFrame(const ProtocolMessage& message) {
  const std::string payload = EncodePayload(message);
  const auto n = static_cast<uint32_t>(payload.size());
  std::string frame;
  frame.reserve(kFrameHeaderSize + payload.size());
  frame.push_back(static_cast<char>((n >> 24) & 0xff));
  frame.push_back(static_cast<char>((n >> 16) & 0xff));
  frame.push_back(static_cast<char>((n >> 8) & 0xff));
  frame.push_back(static_cast<char>(n & 0xff));
  frame += payload;
  return frame;
}

absl::StatusOr<uint32_t> DecodeFrameLength(std::string_view header) {
  if (header.size() < kFrameHeaderSize) {
    return MakeError(ErrorCode::kFrameTruncated,
                     StrCat("frame header has ", header.size(), " of 4 bytes"));
  }
  const auto byte = [&](int i) {
    return static_cast<uint32_t>(static_cast<unsigned char>(header[i]));
  };
  const uint32_t n =
      (byte(0) << 24) | (byte(1) << 16) | (byte(2) << 8) | byte(3);
  if (n > kMaxFramePayload) {
    return MakeError(
        ErrorCode::kFrameTooLarge,
        StrCat("frame payload of ", n, " bytes exceeds the 64 MiB limit"));
  }
  return n;
}

absl::StatusOr<ProtocolMessage> DecodeFrame(std::string_view bytes) {
  PRIARTA_ASSIGN_OR_RETURN(uint32_t n, DecodeFrameLength(bytes));
  const size_t total = kFrameHeaderSize + n;
  if (bytes.size() < total) {
    return MakeError(ErrorCode::kFrameTruncated,
                     StrCat("frame declares ", n, " payload bytes, has ",
                            bytes.size() - kFrameHeaderSize));
  }
  if (bytes.size() > total) {
    return MakeError(
        ErrorCode::kMalformedPayload,
        StrCat(bytes.size() - total, " trailing bytes after frame"));
  }
  return DecodePayload(bytes.substr(kFrameHeaderSize));
}

}  // namespace priarta

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

#include <cstring>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace priarta {
namespace {

EncoderSpec Spec() {
  EncoderSpec spec;
  spec.seed = 12345678901234567890ULL;
  spec.input_dim = 24;
  spec.signal_dims = 16;
  spec.latent_dim = 8;
  spec.leakage_alpha = 0.125;
  return spec;
}

StatsResponseMessage RandomResponse(Prng& prng, int d) {
  StatsResponseMessage m;
  m.mean = testing::GaussianVector(prng, d, 1e3);
  for (int i = 0; i < d * (d + 1) / 2; ++i) {
    m.covariance_upper.push_back(prng.NextGaussian() * 1e-3);
  }
  if (d > 1) m.covariance_upper[1] = -0.0;
  m.count = 4000;
  m.session_id = "valuation/seller-1";
  m.sigma_used = 2.4246811;
  m.encoder_fingerprint = Spec().Fingerprint();
  return m;
}

std::vector<ProtocolMessage> AllVariants() {
  Prng prng(1);
  StatsRequestMessage seeded{4000, 0.8,   1e-5,
                             20.0, "s-1", 18446744073709551615ULL};
  StatsRequestMessage secure{10, 0.5, 0.25, 1.0, "s-2", std::nullopt};
  return {HelloMessage{1},
          ModelSpecMessage{Spec()},
          seeded,
          secure,
          RandomResponse(prng, 1),
          RandomResponse(prng, 64),
          ErrorMessage{"INSUFFICIENT_DATA", "need 4000 rows, have 10\n\"q\"",
                       "s-3"}};
}

TEST(FrameTest, RoundTripEveryVariant) {
  for (const ProtocolMessage& m : AllVariants()) {
    const std::string frame = EncodeFrame(m);
    ASSERT_OK_AND_ASSIGN(ProtocolMessage back, DecodeFrame(frame));
    EXPECT_EQ(back.index(), m.index());
    EXPECT_TRUE(back == m) << MessageTypeName(m);
    EXPECT_EQ(EncodeFrame(back), frame);
  }
}

TEST(FrameTest, ResponseFloatsBitExact) {
  Prng prng(2);
  const StatsResponseMessage m = RandomResponse(prng, 64);
  ASSERT_OK_AND_ASSIGN(ProtocolMessage back, DecodeFrame(EncodeFrame(m)));
  const auto& r = std::get<StatsResponseMessage>(back);
  ASSERT_EQ(r.covariance_upper.size(), m.covariance_upper.size());
  EXPECT_EQ(std::memcmp(r.covariance_upper.data(), m.covariance_upper.data(),
                        m.covariance_upper.size() * sizeof(double)),
            0);
  EXPECT_EQ(std::memcmp(r.mean.data(), m.mean.data(), 64 * sizeof(double)), 0);
  EXPECT_TRUE(std::signbit(r.covariance_upper[1]));
}

TEST(FrameTest, HeaderIsBigEndianLength) {
  const std::string frame = EncodeFrame(HelloMessage{1});
  const std::string payload = EncodePayload(HelloMessage{1});
  EXPECT_EQ(payload, R"({"protocol_version":1,"type":"HELLO"})");
  ASSERT_EQ(frame.size(), payload.size() + 4);
  EXPECT_EQ(frame.substr(0, 4), std::string("\0\0\0\x25", 4));
  EXPECT_EQ(frame.substr(4), payload);
}

TEST(FrameTest, CanonicalPayloadKeyOrder) {
  const std::string payload = EncodePayload(
      StatsRequestMessage{5, 0.5, 0.001, 2.0, "x", std::optional<uint64_t>(9)});
  EXPECT_EQ(payload, R"({"clip_radius":2.0,"delta":0.001,"epsilon":0.5,)"
                     R"("mode":{"kind":"seeded","seed":9},"session_id":"x",)"
                     R"("subset_size":5,"type":"STATS_REQUEST"})");
}

TEST(FrameTest, Errors) {
  const std::string frame = EncodeFrame(HelloMessage{1});
  EXPECT_ERROR_CODE(DecodeFrame(frame.substr(0, 3)),
                    ErrorCode::kFrameTruncated);
  EXPECT_ERROR_CODE(DecodeFrame(frame.substr(0, frame.size() - 1)),
                    ErrorCode::kFrameTruncated);
  EXPECT_ERROR_CODE(DecodeFrame(frame + "x"), ErrorCode::kMalformedPayload);
  EXPECT_ERROR_CODE(DecodeFrame(std::string("\x04\0\0\x01", 4)),
                    ErrorCode::kFrameTooLarge);
  EXPECT_ERROR_CODE(DecodeFrameLength(std::string("\x04\0\0\0", 4)),
                    ErrorCode::kOk);
  EXPECT_ERROR_CODE(DecodeFrameLength(std::string("\x04\0\0\x01", 4)),
                    ErrorCode::kFrameTooLarge);
  EXPECT_ERROR_CODE(DecodePayload(R"({"type":"GOODBYE"})"),
                    ErrorCode::kUnknownMessage);
  EXPECT_ERROR_CODE(DecodePayload(R"({"protocol_version":1})"),
                    ErrorCode::kMalformedPayload);
  EXPECT_ERROR_CODE(DecodePayload(R"([1,2])"), ErrorCode::kMalformedPayload);
  EXPECT_ERROR_CODE(DecodePayload("{"), ErrorCode::kMalformedPayload);
  EXPECT_ERROR_CODE(DecodePayload(R"({"type":"HELLO"})"),
                    ErrorCode::kMalformedPayload);
  EXPECT_ERROR_CODE(
      DecodePayload(
          R"({"type":"STATS_RESPONSE","mean":[1,2],"covariance":[1,0],)"
          R"("count":5,"session_id":"","sigma_used":1.0,)"
          R"("encoder_fingerprint":""})"),
      ErrorCode::kMalformedPayload);
  EXPECT_ERROR_CODE(
      DecodePayload(R"({"type":"STATS_REQUEST","subset_size":5,"epsilon":0.5,)"
                    R"("delta":0.1,"clip_radius":1.0,"session_id":"",)"
                    R"("mode":{"kind":"lucky"}})"),
      ErrorCode::kMalformedPayload);
}

TEST(FrameTest, FuzzNeverCrashes) {
  // 1e5 frames: pure noise, noise behind a valid length prefix, and valid
  // frames with random byte flips, truncations and splices.
  Prng prng(3);
  const std::vector<ProtocolMessage> variants = AllVariants();
  std::vector<std::string> seeds;
  for (const auto& m : variants) seeds.push_back(EncodeFrame(m));
  int decoded = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string bytes;
    switch (i % 4) {
      case 0: {
        const size_t n = prng.UniformIndex(64);
        for (size_t k = 0; k < n; ++k)
          bytes.push_back(static_cast<char>(prng.NextU64()));
        break;
      }
      case 1: {
        const uint32_t n = static_cast<uint32_t>(prng.UniformIndex(200));
        bytes = std::string{static_cast<char>(0), static_cast<char>(0),
                            static_cast<char>(n >> 8), static_cast<char>(n)};
        for (uint32_t k = 0; k < n; ++k) {
          bytes.push_back(static_cast<char>(32 + prng.UniformIndex(95)));
        }
        break;
      }
      case 2: {
        bytes = seeds[prng.UniformIndex(seeds.size())];
        const int flips = 1 + static_cast<int>(prng.UniformIndex(4));
        for (int f = 0; f < flips; ++f) {
          bytes[prng.UniformIndex(bytes.size())] ^=
              static_cast<char>(1 + prng.UniformIndex(255));
        }
        break;
      }
      default: {
        const std::string& a = seeds[prng.UniformIndex(seeds.size())];
        const std::string& b = seeds[prng.UniformIndex(seeds.size())];
        bytes = a.substr(0, prng.UniformIndex(a.size() + 1)) +
                b.substr(prng.UniformIndex(b.size() + 1));
        break;
      }
    }
    auto result = DecodeFrame(bytes);
    if (result.ok()) {
      ++decoded;
      // Anything accepted must re-encode to a decodable frame.
      EXPECT_OK(DecodeFrame(EncodeFrame(*result)));
    } else {
      const ErrorCode code = GetErrorCode(result.status());
      EXPECT_TRUE(code == ErrorCode::kFrameTruncated ||
                  code == ErrorCode::kFrameTooLarge ||
                  code == ErrorCode::kUnknownMessage ||
                  code == ErrorCode::kMalformedPayload)
          << result.status();
    }
  }
  EXPECT_LT(decoded, 100000);
}

TEST(TriangleTest, PackExpandBitExact) {
  Prng prng(4);
  for (int d : {1, 2, 7, 64}) {
    const Eigen::MatrixXd m = testing::RandomPsdMatrix(prng, d);
    ASSERT_OK_AND_ASSIGN(SymmetricMatrix s, SymmetricMatrix::Create(m));
    const std::vector<double> packed = PackUpperTriangle(s);
    EXPECT_EQ(packed.size(), static_cast<size_t>(d * (d + 1) / 2));
    ASSERT_OK_AND_ASSIGN(SymmetricMatrix back, ExpandUpperTriangle(packed));
    EXPECT_EQ(back, s);
  }
  EXPECT_ERROR_CODE(ExpandUpperTriangle({1.0, 2.0}), ErrorCode::kShapeMismatch);
  EXPECT_ERROR_CODE(ExpandUpperTriangle({}), ErrorCode::kShapeMismatch);
}

TEST(StatsResponseTest, SummaryRoundTrip) {
  Prng prng(5);
  const GaussianSummary s = testing::RandomSummary(prng, 6);
  const StatsResponseMessage m =
      StatsResponseMessage::FromSummary(s, "sid", 1.5, "abc");
  ASSERT_OK_AND_ASSIGN(ProtocolMessage back, DecodeFrame(EncodeFrame(m)));
  ASSERT_OK_AND_ASSIGN(GaussianSummary s2,
                       std::get<StatsResponseMessage>(back).ToSummary());
  EXPECT_EQ(s2, s);
}

TEST(ErrorMessageTest, FromStatus) {
  const ErrorMessage e = ErrorFromStatus(
      MakeError(ErrorCode::kInsufficientData, "too few"), "sid");
  EXPECT_EQ(e.code, "INSUFFICIENT_DATA");
  EXPECT_EQ(e.message, "INSUFFICIENT_DATA: too few");
  EXPECT_EQ(e.session_id, "sid");
  EXPECT_EQ(MessageTypeName(ProtocolMessage(e)), "ERROR");
}

}  // namespace
}  // namespace priarta

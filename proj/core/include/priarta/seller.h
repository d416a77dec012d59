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

// Seller side of the valuation exchange: subset sampling, the private
// summarization pipeline, and per-session request handling.
//
// A session is one ordered conversation (one connection). MODEL_SPEC must
// precede STATS_REQUEST within a session. Every STATS_REQUEST draws a fresh
// subset; privacy accounting across repeated requests is not tracked.

#ifndef PRIARTA_SELLER_H_
#define PRIARTA_SELLER_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "priarta/encoder.h"
#include "priarta/gaussian_geometry.h"
#include "priarta/privacy.h"
#include "priarta/protocol.h"
#include "priarta/statistics.h"

namespace priarta {

// Raw points to be encoded with the buyer's spec, or embeddings produced by an
// external encoder.
using SellerData = std::variant<RawDataset, EmbeddingSet>;

// m_tilde distinct row indices, uniform without replacement (partial
// Fisher-Yates over Prng(seed)). INSUFFICIENT_DATA when m_tilde > m.
absl::StatusOr<std::vector<int>> SampleIndices(int m, int64_t m_tilde,
                                               uint64_t seed);

absl::StatusOr<RawDataset> SampleSubset(const RawDataset& data, int64_t m_tilde,
                                        uint64_t seed);

struct PipelineSeeds {
  uint64_t subset = 0;
  uint64_t noise = 0;
};

// Splits one request seed into the subset and noise streams.
PipelineSeeds DerivePipelineSeeds(uint64_t request_seed);

struct SellerStats {
  GaussianSummary summary;
  NoiseCalibration calibration;
};

// sample -> encode -> clip(R) -> calibrate -> add noise -> summarize.
// Embedding data requires an external spec whose latent_dim matches.
absl::StatusOr<SellerStats> ComputeSellerStats(const SellerData& data,
                                               const EncoderSpec& spec,
                                               const PrivacyBudget& budget,
                                               const PipelineSeeds& seeds);

// Rejects specs the data cannot be encoded with (SPEC_MISMATCH).
absl::Status CheckSpecCompatible(const SellerData& data,
                                 const EncoderSpec& spec);

class SellerSession;

class SellerNode {
 public:
  enum class State { kIdle, kServed };

  SellerNode(std::string node_id, SellerData data)
      : node_id_(std::move(node_id)), data_(std::move(data)) {}

  const std::string& node_id() const { return node_id_; }
  const SellerData& data() const { return data_; }
  State state() const {
    return sessions_served_.load() > 0 ? State::kServed : State::kIdle;
  }
  int64_t sessions_served() const { return sessions_served_.load(); }

  SellerSession OpenSession();

 private:
  friend class SellerSession;

  std::string node_id_;
  SellerData data_;
  std::atomic<int64_t> sessions_served_{0};
};

// Per-session state. Sessions on the same node are independent and may run
// on different threads concurrently.
class SellerSession {
 public:
  ProtocolMessage Handle(const ProtocolMessage& request);

  // Decode + Handle + encode. Undecodable frames get an ERROR reply with the
  // decode failure's code.
  std::string HandleFrame(std::string_view frame);

 private:
  friend class SellerNode;
  explicit SellerSession(SellerNode& node) : node_(node) {}

  ProtocolMessage HandleStatsRequest(const StatsRequestMessage& request);

  SellerNode& node_;
  std::optional<EncoderSpec> spec_;
};

}  // namespace priarta

#endif  // PRIARTA_SELLER_H_

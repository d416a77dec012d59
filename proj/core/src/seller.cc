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

#include "priarta/seller.h"

#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"
#include "priarta/errors.h"
#include "priarta/logging.h"
#include "priarta/random.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {

absl::StatusOr<std::vector<int>> SampleIndices(int m, int64_t m_tilde,
                                               uint64_t seed) {
  if (m_tilde < 1) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("subset size must be >= 1, got ", m_tilde));
  }
  if (m_tilde > m) {
    return MakeError(
        ErrorCode::kInsufficientData,
        StrCat("subset of ", m_tilde, " requested from a dataset of ", m));
  }
  std::vector<int> indices(m);
  std::iota(indices.begin(), indices.end(), 0);
  Prng prng(seed);
  for (int64_t i = 0; i < m_tilde; ++i) {
    const auto j = static_cast<int64_t>(i + prng.UniformIndex(m - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(m_tilde);
  return indices;
}

absl::StatusOr<RawDataset> SampleSubset(const RawDataset& data, int64_t m_tilde,
                                        uint64_t seed) {
  PRIARTA_ASSIGN_OR_RETURN(std::vector<int> indices,
                           SampleIndices(data.size(), m_tilde, seed));
  RawDataset out;
  out.points.resize(m_tilde, data.dim());
  out.labels.resize(m_tilde);
  out.class_probs = data.class_probs;
  for (int64_t i = 0; i < m_tilde; ++i) {
    out.points.row(i) = data.points.row(indices[i]);
    out.labels[i] = data.labels[indices[i]];
  }
  return out;
}

PipelineSeeds DerivePipelineSeeds(uint64_t request_seed) {
  return {DeriveSeed(request_seed, "subset"),
          DeriveSeed(request_seed, "noise")};
}

absl::Status CheckSpecCompatible(const SellerData& data,
                                 const EncoderSpec& spec) {
  if (absl::Status s = spec.Validate(); !s.ok()) {
    return MakeError(ErrorCode::kSpecMismatch, ToStd(s.message()));
  }
  if (const auto* raw = std::get_if<RawDataset>(&data)) {
    if (spec.kind != EncoderSpec::Kind::kToyProjection) {
      return MakeError(ErrorCode::kSpecMismatch,
                       "raw-data seller needs a toy_projection encoder");
    }
    if (raw->dim() != spec.input_dim) {
      return MakeError(ErrorCode::kSpecMismatch,
                       StrCat("seller data has ", raw->dim(),
                              " input dims, encoder expects ", spec.input_dim));
    }
    return absl::OkStatus();
  }
  const auto& embeddings = std::get<EmbeddingSet>(data);
  if (spec.kind != EncoderSpec::Kind::kExternal) {
    return MakeError(ErrorCode::kSpecMismatch,
                     "embedding-file seller needs an external encoder spec");
  }
  if (embeddings.dim() != spec.latent_dim) {
    return MakeError(ErrorCode::kSpecMismatch,
                     StrCat("seller embeddings have ", embeddings.dim(),
                            " dims, encoder declares ", spec.latent_dim));
  }
  return absl::OkStatus();
}

absl::StatusOr<SellerStats> ComputeSellerStats(const SellerData& data,
                                               const EncoderSpec& spec,
                                               const PrivacyBudget& budget,
                                               const PipelineSeeds& seeds) {
  PRIARTA_RETURN_IF_ERROR(CheckSpecCompatible(data, spec));
  Eigen::MatrixXd latent;
  if (const auto* raw = std::get_if<RawDataset>(&data)) {
    PRIARTA_ASSIGN_OR_RETURN(
        RawDataset subset,
        SampleSubset(*raw, budget.subset_size(), seeds.subset));
    PRIARTA_ASSIGN_OR_RETURN(latent, Encode(spec, subset));
  } else {
    const auto& embeddings = std::get<EmbeddingSet>(data);
    PRIARTA_ASSIGN_OR_RETURN(
        std::vector<int> indices,
        SampleIndices(embeddings.size(), budget.subset_size(), seeds.subset));
    latent.resize(budget.subset_size(), embeddings.dim());
    for (size_t i = 0; i < indices.size(); ++i) {
      latent.row(i) = embeddings.vectors().row(indices[i]);
    }
  }
  PRIARTA_ASSIGN_OR_RETURN(EmbeddingSet clipped,
                           ClipToBall(latent, budget.clip_radius()));
  PRIARTA_ASSIGN_OR_RETURN(NoiseCalibration calibration,
                           CalibrateSigma(budget));
  PRIARTA_ASSIGN_OR_RETURN(
      EmbeddingSet noisy,
      ApplyGaussianMechanism(clipped, calibration.sigma, seeds.noise));
  PRIARTA_ASSIGN_OR_RETURN(GaussianSummary summary, Summarize(noisy));
  return SellerStats{std::move(summary), calibration};
}

SellerSession SellerNode::OpenSession() { return SellerSession(*this); }

ProtocolMessage SellerSession::Handle(const ProtocolMessage& request) {
  if (const auto* hello = std::get_if<HelloMessage>(&request)) {
    if (hello->protocol_version != kProtocolVersion) {
      return ErrorFromStatus(
          MakeError(ErrorCode::kUnsupportedVersion,
                    StrCat("protocol version ", hello->protocol_version,
                           " not supported")),
          "");
    }
    return HelloMessage{kProtocolVersion};
  }
  if (const auto* model = std::get_if<ModelSpecMessage>(&request)) {
    if (absl::Status s = CheckSpecCompatible(node_.data(), model->encoder);
        !s.ok()) {
      return ErrorFromStatus(s, "");
    }
    spec_ = model->encoder;
    return *model;
  }
  if (const auto* stats = std::get_if<StatsRequestMessage>(&request)) {
    return HandleStatsRequest(*stats);
  }
  return ErrorFromStatus(
      MakeError(ErrorCode::kProtocolOrder,
                StrCat("seller does not accept ", MessageTypeName(request),
                       " messages")),
      "");
}

ProtocolMessage SellerSession::HandleStatsRequest(
    const StatsRequestMessage& request) {
  const auto fail = [&](const absl::Status& status) -> ProtocolMessage {
    PRIARTA_LOG(kInfo) << "seller " << node_.node_id() << " session "
                       << request.session_id << " failed: " << status.message();
    return ErrorFromStatus(status, request.session_id);
  };
  if (!spec_.has_value()) {
    return fail(MakeError(ErrorCode::kProtocolOrder,
                          "STATS_REQUEST received before MODEL_SPEC"));
  }
  auto budget = PrivacyBudget::Create(request.epsilon, request.delta,
                                      request.clip_radius, request.subset_size);
  if (!budget.ok()) return fail(budget.status());
  const uint64_t seed = request.seed.has_value() ? *request.seed : SecureSeed();
  auto stats = ComputeSellerStats(node_.data(), *spec_, *budget,
                                  DerivePipelineSeeds(seed));
  if (!stats.ok()) return fail(stats.status());
  node_.sessions_served_.fetch_add(1);
  PRIARTA_LOG(kInfo) << "seller " << node_.node_id() << " served session "
                     << request.session_id << " (n = " << request.subset_size
                     << ", sigma = " << stats->calibration.sigma << ")";
  return StatsResponseMessage::FromSummary(stats->summary, request.session_id,
                                           stats->calibration.sigma,
                                           spec_->Fingerprint());
}

std::string SellerSession::HandleFrame(std::string_view frame) {
  auto request = DecodeFrame(frame);
  if (!request.ok()) {
    return EncodeFrame(ErrorFromStatus(request.status(), ""));
  }
  return EncodeFrame(Handle(*request));
}

}  // namespace priarta

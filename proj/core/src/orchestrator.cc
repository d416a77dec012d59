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

#include "priarta/orchestrator.h"

#include <algorithm>
#include <future>
#include <utility>

#include "absl/strings/str_cat.h"
#include "priarta/errors.h"
#include "priarta/logging.h"
#include "priarta/random.h"
#include "priarta/statistics.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

template <typename T>
const T* Expect(const ProtocolMessage& reply, SellerOutcome& outcome) {
  if (const auto* error = std::get_if<ErrorMessage>(&reply)) {
    outcome.failure_code = error->code;
    outcome.failure_reason = error->message;
    return nullptr;
  }
  if (const auto* expected = std::get_if<T>(&reply)) return expected;
  outcome.failure_code = std::string(ErrorCodeName(ErrorCode::kProtocolOrder));
  outcome.failure_reason =
      StrCat("unexpected ", MessageTypeName(reply), " reply");
  return nullptr;
}

void RecordFailure(SellerOutcome& outcome, const absl::Status& status) {
  outcome.failure_code = std::string(ErrorCodeName(GetErrorCode(status)));
  outcome.failure_reason = std::string(status.message());
}

}  // namespace

bool OrchestrationResult::any_succeeded() const {
  return std::any_of(sellers.begin(), sellers.end(),
                     [](const SellerOutcome& o) { return !o.failed(); });
}

absl::StatusOr<GaussianSummary> ComputeBuyerSummary(
    const SellerData& buyer_data, const ValuationParams& params) {
  Eigen::MatrixXd latent;
  if (const auto* raw = std::get_if<RawDataset>(&buyer_data)) {
    PRIARTA_ASSIGN_OR_RETURN(latent, Encode(params.encoder, *raw));
  } else {
    latent = std::get<EmbeddingSet>(buyer_data).vectors();
  }
  PRIARTA_ASSIGN_OR_RETURN(EmbeddingSet clipped,
                           ClipToBall(latent, params.budget.clip_radius()));
  if (!params.buyer_noise) return Summarize(clipped);
  PRIARTA_ASSIGN_OR_RETURN(NoiseCalibration calibration,
                           CalibrateSigma(params.budget));
  const uint64_t seed = params.seed.has_value()
                            ? DeriveSeed(*params.seed, "buyer/noise")
                            : SecureSeed();
  PRIARTA_ASSIGN_OR_RETURN(
      EmbeddingSet noisy,
      ApplyGaussianMechanism(clipped, calibration.sigma, seed));
  return Summarize(noisy);
}

SellerOutcome QuerySeller(const SellerEndpoint& endpoint,
                          const ValuationParams& params) {
  SellerOutcome outcome;
  outcome.node_id = endpoint.node_id;
  auto connection = Connect(endpoint);
  if (!connection.ok()) {
    RecordFailure(outcome, connection.status());
    return outcome;
  }
  const auto exchange =
      [&](const ProtocolMessage& request) -> absl::StatusOr<ProtocolMessage> {
    std::string frame = EncodeFrame(request);
    outcome.bytes_sent += frame.size();
    auto reply = (*connection)->Exchange(frame);
    outcome.frames.push_back(std::move(frame));
    if (!reply.ok()) return reply.status();
    outcome.bytes_received += reply->size();
    outcome.frames.push_back(*reply);
    return DecodeFrame(*reply);
  };

  auto hello = exchange(HelloMessage{kProtocolVersion});
  if (!hello.ok()) {
    RecordFailure(outcome, hello.status());
    return outcome;
  }
  if (Expect<HelloMessage>(*hello, outcome) == nullptr) return outcome;

  auto spec_ack = exchange(ModelSpecMessage{params.encoder});
  if (!spec_ack.ok()) {
    RecordFailure(outcome, spec_ack.status());
    return outcome;
  }
  if (Expect<ModelSpecMessage>(*spec_ack, outcome) == nullptr) return outcome;

  StatsRequestMessage request;
  request.subset_size = params.budget.subset_size();
  request.epsilon = params.budget.epsilon();
  request.delta = params.budget.delta();
  request.clip_radius = params.budget.clip_radius();
  request.session_id = StrCat(params.session_prefix, "/", endpoint.node_id);
  if (params.seed.has_value()) {
    request.seed = DeriveSeed(*params.seed, "seller/" + endpoint.node_id);
  }
  auto reply = exchange(request);
  if (!reply.ok()) {
    RecordFailure(outcome, reply.status());
    return outcome;
  }
  const auto* stats = Expect<StatsResponseMessage>(*reply, outcome);
  if (stats == nullptr) return outcome;
  if (stats->count != request.subset_size ||
      stats->session_id != request.session_id) {
    RecordFailure(outcome, MakeError(ErrorCode::kProtocolOrder,
                                     StrCat("response for session '",
                                            stats->session_id, "' with count ",
                                            stats->count, " does not match")));
    return outcome;
  }
  auto summary = stats->ToSummary();
  if (summary.ok() && params.debias) {
    summary = DebiasCovariance(*summary, stats->sigma_used);
  }
  if (!summary.ok()) {
    RecordFailure(outcome, summary.status());
    return outcome;
  }
  outcome.summary = *std::move(summary);
  outcome.sigma_used = stats->sigma_used;
  outcome.encoder_fingerprint = stats->encoder_fingerprint;
  return outcome;
}

absl::StatusOr<OrchestrationResult> OrchestrateValuation(
    const SellerData& buyer_data, const std::vector<SellerEndpoint>& sellers,
    const ValuationParams& params) {
  if (sellers.empty()) {
    return MakeError(ErrorCode::kNoCandidates, "no sellers to query");
  }
  PRIARTA_ASSIGN_OR_RETURN(GaussianSummary buyer,
                           ComputeBuyerSummary(buyer_data, params));
  std::vector<SellerOutcome> outcomes;
  outcomes.reserve(sellers.size());
  if (params.concurrent) {
    std::vector<std::future<SellerOutcome>> pending;
    for (const SellerEndpoint& endpoint : sellers) {
      pending.push_back(std::async(std::launch::async, [&endpoint, &params] {
        return QuerySeller(endpoint, params);
      }));
    }
    for (auto& f : pending) outcomes.push_back(f.get());
  } else {
    for (const SellerEndpoint& endpoint : sellers) {
      outcomes.push_back(QuerySeller(endpoint, params));
    }
  }
  std::stable_sort(outcomes.begin(), outcomes.end(),
                   [](const SellerOutcome& a, const SellerOutcome& b) {
                     return a.node_id < b.node_id;
                   });
  for (const SellerOutcome& o : outcomes) {
    if (o.failed()) {
      PRIARTA_LOG(kWarning) << "seller " << o.node_id << " failed ("
                            << o.failure_code << "): " << o.failure_reason;
    }
  }
  return OrchestrationResult{std::move(buyer), std::move(outcomes)};
}

Json ParamsEcho(const ValuationParams& params, Objective objective) {
  Json echo{{"epsilon", params.budget.epsilon()},
            {"delta", params.budget.delta()},
            {"clip_radius", params.budget.clip_radius()},
            {"subset_size", params.budget.subset_size()},
            {"encoder", params.encoder.ToJson()},
            {"encoder_fingerprint", params.encoder.Fingerprint()},
            {"noise_sampler", std::string(kGaussianSamplerName)},
            {"objective", std::string(ObjectiveName(objective))},
            {"buyer_noise", params.buyer_noise},
            {"debias", params.debias},
            {"protocol_version", kProtocolVersion}};
  if (params.seed.has_value()) {
    echo["mode"] = "seeded";
    echo["seed"] = *params.seed;
  } else {
    echo["mode"] = "secure";
  }
  return echo;
}

absl::StatusOr<ValuationReport> RunValuation(
    const SellerData& buyer_data, const std::vector<SellerEndpoint>& sellers,
    const ValuationParams& params, Objective objective) {
  PRIARTA_ASSIGN_OR_RETURN(OrchestrationResult result,
                           OrchestrateValuation(buyer_data, sellers, params));
  std::vector<SellerScoreInput> inputs;
  inputs.reserve(result.sellers.size());
  for (SellerOutcome& o : result.sellers) {
    inputs.push_back(
        SellerScoreInput{o.node_id, std::move(o.summary),
                         o.failed() ? o.failure_reason : std::string()});
  }
  return BuildReport(result.buyer_summary, inputs, objective,
                     ParamsEcho(params, objective));
}

}  // namespace priarta

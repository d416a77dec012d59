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

// Buyer side of the exchange: broadcast the encoder spec and one set of
// privacy parameters to every seller, collect the summaries, and compute the
// buyer's own summary locally.

#ifndef PRIARTA_ORCHESTRATOR_H_
#define PRIARTA_ORCHESTRATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "priarta/encoder.h"
#include "priarta/gaussian_geometry.h"
#include "priarta/privacy.h"
#include "priarta/seller.h"
#include "priarta/transport.h"
#include "priarta/valuation.h"

namespace priarta {

struct ValuationParams {
  PrivacyBudget budget;
  EncoderSpec encoder;
  // Master seed for replayable runs; each seller gets
  // DeriveSeed(seed, "seller/" + node_id). Unset: secure mode.
  std::optional<uint64_t> seed;
  // Noise the buyer's own summary with the sellers' sigma (ablation).
  bool buyer_noise = false;
  // Subtract sigma_used^2 I from every seller covariance.
  bool debias = false;
  // Talk to sellers on parallel threads.
  bool concurrent = false;
  std::string session_prefix = "valuation";
};

struct SellerOutcome {
  std::string node_id;
  std::optional<GaussianSummary> summary;
  double sigma_used = 0.0;
  std::string encoder_fingerprint;
  std::string failure_code;  // empty on success
  std::string failure_reason;
  size_t bytes_sent = 0;
  size_t bytes_received = 0;
  // Every frame of the session in order, requests and replies interleaved.
  std::vector<std::string> frames;

  bool failed() const { return !summary.has_value(); }
};

struct OrchestrationResult {
  GaussianSummary buyer_summary;
  std::vector<SellerOutcome> sellers;  // sorted by node_id

  // Valuation is possible only if at least one seller answered.
  bool any_succeeded() const;
};

// Clip to R and summarize; with params.buyer_noise the sellers' mechanism is
// applied first.
absl::StatusOr<GaussianSummary> ComputeBuyerSummary(
    const SellerData& buyer_data, const ValuationParams& params);

// Runs one full session against a seller. Never fails: problems are recorded
// in the outcome.
SellerOutcome QuerySeller(const SellerEndpoint& endpoint,
                          const ValuationParams& params);

// Fails only if there are no sellers or the buyer summary cannot be computed.
// Seller failures are recorded per outcome; see any_succeeded().
absl::StatusOr<OrchestrationResult> OrchestrateValuation(
    const SellerData& buyer_data, const std::vector<SellerEndpoint>& sellers,
    const ValuationParams& params);

// Parameter record echoed into reports: privacy budget, seed (or "secure"),
// encoder spec and fingerprint, sampler name, and flags.
Json ParamsEcho(const ValuationParams& params, Objective objective);

// OrchestrateValuation followed by BuildReport. A report in which every
// seller failed is still returned; check num_succeeded().
absl::StatusOr<ValuationReport> RunValuation(
    const SellerData& buyer_data, const std::vector<SellerEndpoint>& sellers,
    const ValuationParams& params, Objective objective);

}  // namespace priarta

#endif  // PRIARTA_ORCHESTRATOR_H_

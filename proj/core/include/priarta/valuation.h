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

// Buyer-side decision layer: W2 scores, min-max normalization, ranking under
// a diversify/enrich objective, and augmentation-robustness deviations.

#ifndef PRIARTA_VALUATION_H_
#define PRIARTA_VALUATION_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "priarta/canonical_text.h"
#include "priarta/gaussian_geometry.h"

namespace priarta {

// kDiversify prefers sellers far from the buyer (cover new regions), kEnrich
// prefers close ones (deepen existing coverage).
enum class Objective { kDiversify, kEnrich };

std::string_view ObjectiveName(Objective objective);
absl::StatusOr<Objective> ParseObjective(std::string_view name);

absl::StatusOr<double> Score(const GaussianSummary& buyer,
                             const GaussianSummary& seller);

struct NormalizedScores {
  std::vector<double> values;
  bool degenerate = false;  // max == min; all values are 0
};

absl::StatusOr<NormalizedScores> MinMaxNormalize(std::span<const double> raw);

struct ValuationEntry {
  std::string node_id;
  double raw_w2 = 0.0;
  double normalized = 0.0;
  bool failed = false;
  std::string failure_reason;
};

// Non-failed node ids, best first. Ties go to the smaller node id.
absl::StatusOr<std::vector<std::string>> RankSellers(
    std::span<const ValuationEntry> entries, Objective objective);

struct RobustnessEntry {
  std::string node_id;
  std::string source_id;
  double baseline_w2 = 0.0;
  double augmented_w2 = 0.0;
  double deviation = 0.0;
};

// Both distances use the same buyer summary; deviation = |augmented - base|.
absl::StatusOr<RobustnessEntry> ComputeRobustness(
    const GaussianSummary& buyer, const GaussianSummary& seller_baseline,
    const GaussianSummary& seller_augmented);

struct SellerScoreInput {
  std::string node_id;
  std::optional<GaussianSummary> summary;  // absent: failed
  std::string failure_reason;
};

struct ValuationReport {
  std::vector<ValuationEntry> entries;  // sorted by node_id
  Objective objective = Objective::kDiversify;
  std::vector<std::string> ranking;
  bool normalization_degenerate = false;
  Json params_echo = Json::object();
  std::optional<std::vector<RobustnessEntry>> robustness;

  int num_succeeded() const;

  Json ToJson() const;
  static absl::StatusOr<ValuationReport> FromJson(const Json& json);
  // Canonical text plus a trailing newline.
  std::string Serialize() const;
  static absl::StatusOr<ValuationReport> Parse(std::string_view text);
};

// Scores every seller against the buyer. Never fails on seller problems: a
// seller whose summary is missing or cannot be scored becomes a failed
// entry. With no successful seller the ranking is empty.
ValuationReport BuildReport(const GaussianSummary& buyer,
                            const std::vector<SellerScoreInput>& sellers,
                            Objective objective, Json params_echo);

}  // namespace priarta

#endif  // PRIARTA_VALUATION_H_

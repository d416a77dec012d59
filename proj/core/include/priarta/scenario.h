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

// Synthetic marketplace scenarios: a buyer and a roster of sellers whose data
// come from a shared Gaussian class mixture, either drawn fresh with their own
// class profile or copied from another party and augmented.
//
// Configuration schema (canonical structured text, all seeds optional and
// derived from master_seed when absent):
//
//   {
//     "num_classes": k, "input_dim": p, "signal_dims": s,
//     "class_means": {"generator": {"scale": x, "seed": u}}
//                  | {"values": [[s numbers] x k]},
//     "class_scale": x,
//     "buyer": {"class_probs": [k], "m": int, "seed": u},
//     "sellers": [
//       {"node_id": str, "kind": "fresh", "class_probs": [k], "m": int,
//        "seed": u},
//       {"node_id": str, "kind": "augmented_copy", "source": "buyer" | id,
//        "augmentation": {"nuisance_noise_scale": x, "nuisance_permute": b,
//                         "apply_prob": x, "seed": u}}
//     ],
//     "encoder": {EncoderSpec fields; "seed" optional},
//     "privacy": {"epsilon": x, "delta": x, "clip_radius": x},
//     "subset_size": int,
//     "master_seed": u
//   }

#ifndef PRIARTA_SCENARIO_H_
#define PRIARTA_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "priarta/canonical_text.h"
#include "priarta/encoder.h"
#include "priarta/orchestrator.h"
#include "priarta/privacy.h"
#include "priarta/valuation.h"

namespace priarta {

inline constexpr std::string_view kBuyerId = "buyer";

struct ScenarioProfile {
  Eigen::VectorXd class_probs;
  int64_t m = 0;
  std::optional<uint64_t> seed;
};

struct ScenarioSellerConfig {
  enum class Kind { kFresh, kAugmentedCopy };

  std::string node_id;
  Kind kind = Kind::kFresh;
  ScenarioProfile fresh;  // kFresh
  std::string source_id;  // kAugmentedCopy
  AugmentationSpec augmentation;
  std::optional<uint64_t> augmentation_seed;
};

struct ScenarioConfig {
  int num_classes = 0;
  int input_dim = 0;
  int signal_dims = 0;
  std::optional<Eigen::MatrixXd> class_means;  // k x s; else generated
  double means_scale = 1.0;
  std::optional<uint64_t> means_seed;
  double class_scale = 1.0;
  ScenarioProfile buyer;
  std::vector<ScenarioSellerConfig> sellers;
  EncoderSpec encoder;
  std::optional<uint64_t> encoder_seed;
  double epsilon = 0.0;
  double delta = 0.0;
  double clip_radius = 0.0;
  int64_t subset_size = 0;
  uint64_t master_seed = 0;

  // Validation lists every offending field (VALIDATION).
  static absl::StatusOr<ScenarioConfig> FromJson(const Json& json);
  static absl::StatusOr<ScenarioConfig> Parse(std::string_view text);
  Json ToJson() const;

  // Copy with class means and every seed materialized.
  absl::StatusOr<ScenarioConfig> Resolved() const;

  absl::StatusOr<PrivacyBudget> Budget() const;
  // Valuation parameters for a seeded run; seed defaults to master_seed.
  absl::StatusOr<ValuationParams> Params(
      std::optional<uint64_t> seed = std::nullopt) const;
};

// The shipped default: 10 classes, buyer on classes 0-4, seller-1 on 5-9,
// seller-2 overlapping the buyer, seller-3 an augmented copy of seller-2,
// sellers 4-7 augmented copies of the buyer. Mirrors
// configs/default_scenario.json.
ScenarioConfig DefaultScenarioConfig(uint64_t master_seed = 2025);

struct ScenarioSellerData {
  std::string node_id;
  RawDataset data;
  std::string source_id;  // empty for fresh sellers
};

struct ScenarioData {
  ScenarioConfig resolved;
  RawDataset buyer;
  std::vector<ScenarioSellerData> sellers;  // config order
};

absl::StatusOr<ScenarioData> BuildScenario(const ScenarioConfig& config);

// Seeded valuation of a built scenario with in-process sellers.
absl::StatusOr<ValuationReport> RunScenarioValuation(
    const ScenarioData& scenario, Objective objective,
    std::optional<uint64_t> seed = std::nullopt, bool debias = false);

// For every augmented copy: W2 from the buyer to the source seller's and to
// the copy's private summary. With shared seeds both pipelines sample the
// same rows and draw the same noise, isolating the augmentation's effect;
// otherwise the copy gets an independent stream.
absl::StatusOr<std::vector<RobustnessEntry>> ComputeScenarioRobustness(
    const ScenarioData& scenario, bool shared_seeds = true);

}  // namespace priarta

#endif  // PRIARTA_SCENARIO_H_

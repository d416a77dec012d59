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

#include "priarta/valuation.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "priarta/errors.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {

std::string_view ObjectiveName(Objective objective) {
  return objective == Objective::kDiversify ? "diversify" : "enrich";
}

absl::StatusOr<Objective> ParseObjective(std::string_view name) {
  if (name == "diversify") return Objective::kDiversify;
  if (name == "enrich") return Objective::kEnrich;
  return MakeError(
      ErrorCode::kInvalidParameter,
      StrCat("objective must be diversify or enrich, got '", name, "'"));
}

absl::StatusOr<double> Score(const GaussianSummary& buyer,
                             const GaussianSummary& seller) {
  return Wasserstein2Gaussian(buyer, seller);
}

absl::StatusOr<NormalizedScores> MinMaxNormalize(std::span<const double> raw) {
  if (raw.empty()) {
    return MakeError(ErrorCode::kEmptyInput, "no scores to normalize");
  }
  for (double x : raw) {
    if (!std::isfinite(x)) {
      return MakeError(ErrorCode::kNumericInput, "non-finite score");
    }
  }
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  NormalizedScores out;
  out.values.resize(raw.size(), 0.0);
  if (*hi == *lo) {
    out.degenerate = true;
    return out;
  }
  const double range = *hi - *lo;
  for (size_t i = 0; i < raw.size(); ++i) {
    out.values[i] = (raw[i] - *lo) / range;
  }
  return out;
}

absl::StatusOr<std::vector<std::string>> RankSellers(
    std::span<const ValuationEntry> entries, Objective objective) {
  std::vector<const ValuationEntry*> alive;
  for (const ValuationEntry& e : entries) {
    if (!e.failed) alive.push_back(&e);
  }
  if (alive.empty()) {
    return MakeError(ErrorCode::kNoCandidates, "every seller failed");
  }
  std::sort(alive.begin(), alive.end(),
            [objective](const ValuationEntry* a, const ValuationEntry* b) {
              if (a->raw_w2 != b->raw_w2) {
                return objective == Objective::kDiversify
                           ? a->raw_w2 > b->raw_w2
                           : a->raw_w2 < b->raw_w2;
              }
              return a->node_id < b->node_id;
            });
  std::vector<std::string> out;
  out.reserve(alive.size());
  for (const ValuationEntry* e : alive) out.push_back(e->node_id);
  return out;
}

absl::StatusOr<RobustnessEntry> ComputeRobustness(
    const GaussianSummary& buyer, const GaussianSummary& seller_baseline,
    const GaussianSummary& seller_augmented) {
  RobustnessEntry out;
  PRIARTA_ASSIGN_OR_RETURN(out.baseline_w2, Score(buyer, seller_baseline));
  PRIARTA_ASSIGN_OR_RETURN(out.augmented_w2, Score(buyer, seller_augmented));
  out.deviation = std::abs(out.augmented_w2 - out.baseline_w2);
  return out;
}

int ValuationReport::num_succeeded() const {
  return static_cast<int>(
      std::count_if(entries.begin(), entries.end(),
                    [](const ValuationEntry& e) { return !e.failed; }));
}

ValuationReport BuildReport(const GaussianSummary& buyer,
                            const std::vector<SellerScoreInput>& sellers,
                            Objective objective, Json params_echo) {
  ValuationReport report;
  report.objective = objective;
  report.params_echo = std::move(params_echo);
  for (const SellerScoreInput& input : sellers) {
    ValuationEntry entry;
    entry.node_id = input.node_id;
    if (!input.summary.has_value()) {
      entry.failed = true;
      entry.failure_reason = input.failure_reason;
    } else if (auto w2 = Score(buyer, *input.summary); w2.ok()) {
      entry.raw_w2 = *w2;
    } else {
      entry.failed = true;
      entry.failure_reason = std::string(w2.status().message());
    }
    report.entries.push_back(std::move(entry));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const ValuationEntry& a, const ValuationEntry& b) {
                     return a.node_id < b.node_id;
                   });
  std::vector<double> raw;
  for (const ValuationEntry& e : report.entries) {
    if (!e.failed) raw.push_back(e.raw_w2);
  }
  if (raw.empty()) return report;
  const NormalizedScores normalized = *MinMaxNormalize(raw);
  report.normalization_degenerate = normalized.degenerate;
  size_t k = 0;
  for (ValuationEntry& e : report.entries) {
    if (!e.failed) e.normalized = normalized.values[k++];
  }
  report.ranking = *RankSellers(report.entries, objective);
  return report;
}

Json ValuationReport::ToJson() const {
  Json entries_json = Json::array();
  for (const ValuationEntry& e : entries) {
    entries_json.push_back(Json{{"node_id", e.node_id},
                                {"raw_w2", e.raw_w2},
                                {"normalized", e.normalized},
                                {"failed", e.failed},
                                {"failure_reason", e.failure_reason}});
  }
  Json out{{"entries", std::move(entries_json)},
           {"objective", std::string(ObjectiveName(objective))},
           {"ranking", ranking},
           {"normalization_degenerate", normalization_degenerate},
           {"params_echo", params_echo}};
  if (robustness.has_value()) {
    Json rows = Json::array();
    for (const RobustnessEntry& r : *robustness) {
      rows.push_back(Json{{"node_id", r.node_id},
                          {"source_id", r.source_id},
                          {"baseline_w2", r.baseline_w2},
                          {"augmented_w2", r.augmented_w2},
                          {"deviation", r.deviation}});
    }
    out["robustness"] = std::move(rows);
  }
  return out;
}

absl::StatusOr<ValuationReport> ValuationReport::FromJson(const Json& json) {
  JsonFieldReader reader(json, "");
  ValuationReport report;
  const Json& entries = reader.Array("entries");
  for (size_t i = 0; entries.is_array() && i < entries.size(); ++i) {
    JsonFieldReader r = reader.Child(entries[i], StrCat("entries[", i, "]"));
    ValuationEntry e;
    e.node_id = r.String("node_id");
    e.raw_w2 = r.Double("raw_w2");
    e.normalized = r.Double("normalized");
    e.failed = r.Bool("failed");
    e.failure_reason = r.String("failure_reason");
    report.entries.push_back(std::move(e));
  }
  const std::string objective = reader.String("objective");
  if (auto parsed = ParseObjective(objective); parsed.ok()) {
    report.objective = *parsed;
  } else if (reader.Has("objective")) {
    reader.AddError("objective", "expected diversify or enrich");
  }
  const Json& ranking = reader.Array("ranking");
  for (size_t i = 0; ranking.is_array() && i < ranking.size(); ++i) {
    if (!ranking[i].is_string()) {
      reader.AddError("ranking", "expected node id strings");
      break;
    }
    report.ranking.push_back(ranking[i].get<std::string>());
  }
  report.normalization_degenerate = reader.Bool("normalization_degenerate");
  report.params_echo = reader.Object("params_echo");
  if (reader.Has("robustness")) {
    const Json& rows = reader.Array("robustness");
    std::vector<RobustnessEntry> parsed;
    for (size_t i = 0; rows.is_array() && i < rows.size(); ++i) {
      JsonFieldReader r = reader.Child(rows[i], StrCat("robustness[", i, "]"));
      RobustnessEntry e;
      e.node_id = r.String("node_id");
      e.source_id = r.String("source_id");
      e.baseline_w2 = r.Double("baseline_w2");
      e.augmented_w2 = r.Double("augmented_w2");
      e.deviation = r.Double("deviation");
      parsed.push_back(std::move(e));
    }
    report.robustness = std::move(parsed);
  }
  PRIARTA_RETURN_IF_ERROR(reader.Finish(ErrorCode::kParseError));
  return report;
}

std::string ValuationReport::Serialize() const {
  return CanonicalDump(ToJson()) + "\n";
}

absl::StatusOr<ValuationReport> ValuationReport::Parse(std::string_view text) {
  PRIARTA_ASSIGN_OR_RETURN(Json json, ParseCanonical(text));
  return FromJson(json);
}

}  // namespace priarta

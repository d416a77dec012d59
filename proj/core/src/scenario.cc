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

#include "priarta/scenario.h"

#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "priarta/errors.h"
#include "priarta/random.h"
#include "priarta/seller.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

constexpr double kProbabilityTolerance = 1e-9;

Eigen::VectorXd ToVector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

Json MatrixToJson(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows.push_back(VectorToJson(m.row(i).transpose()));
  }
  return rows;
}

std::optional<uint64_t> OptionalSeed(JsonFieldReader& reader,
                                     std::string_view key) {
  if (!reader.Has(key)) return std::nullopt;
  return reader.Uint(key);
}

ScenarioProfile ReadProfile(JsonFieldReader& reader) {
  ScenarioProfile profile;
  profile.class_probs = ToVector(reader.Doubles("class_probs"));
  profile.m = reader.Int("m");
  profile.seed = OptionalSeed(reader, "seed");
  return profile;
}

Json ProfileToJson(const ScenarioProfile& profile) {
  Json out{{"class_probs", VectorToJson(profile.class_probs)},
           {"m", profile.m}};
  if (profile.seed.has_value()) out["seed"] = *profile.seed;
  return out;
}

void CheckProfile(const ScenarioProfile& profile, int k,
                  const std::string& path, std::vector<std::string>& errors) {
  if (profile.class_probs.size() != k) {
    errors.push_back(StrCat(path, ".class_probs: expected ", k,
                            " entries, got ", profile.class_probs.size()));
  } else {
    bool valid = true;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (!std::isfinite(profile.class_probs(i)) ||
          profile.class_probs(i) < 0) {
        valid = false;
      }
    }
    if (!valid) {
      errors.push_back(StrCat(path, ".class_probs: entries must be ",
                              "non-negative and finite"));
    } else if (std::abs(profile.class_probs.sum() - 1.0) >
               kProbabilityTolerance) {
      errors.push_back(StrCat(path, ".class_probs: sums to ",
                              profile.class_probs.sum(), ", not 1"));
    }
  }
  if (profile.m < 1) {
    errors.push_back(StrCat(path, ".m: must be >= 1"));
  }
}

std::vector<std::string> Validate(const ScenarioConfig& c) {
  std::vector<std::string> errors;
  if (c.num_classes < 1) errors.push_back("num_classes: must be >= 1");
  if (c.input_dim < 1) errors.push_back("input_dim: must be >= 1");
  if (c.signal_dims < 1 || c.signal_dims > c.input_dim) {
    errors.push_back("signal_dims: must lie in [1, input_dim]");
  }
  if (c.class_means.has_value()) {
    if (c.class_means->rows() != c.num_classes ||
        c.class_means->cols() != c.signal_dims) {
      errors.push_back(StrCat("class_means.values: expected ", c.num_classes,
                              " x ", c.signal_dims));
    } else if (!c.class_means->allFinite()) {
      errors.push_back("class_means.values: entries must be finite");
    }
  } else if (!(c.means_scale >= 0.0) || !std::isfinite(c.means_scale)) {
    errors.push_back("class_means.generator.scale: must be >= 0");
  }
  if (!(c.class_scale >= 0.0) || !std::isfinite(c.class_scale)) {
    errors.push_back("class_scale: must be >= 0");
  }
  CheckProfile(c.buyer, c.num_classes, "buyer", errors);
  if (c.sellers.empty())
    errors.push_back("sellers: at least one seller required");
  std::set<std::string> defined = {std::string(kBuyerId)};
  for (size_t i = 0; i < c.sellers.size(); ++i) {
    const ScenarioSellerConfig& s = c.sellers[i];
    const std::string path = StrCat("sellers[", i, "]");
    if (s.node_id.empty()) {
      errors.push_back(path + ".node_id: must be non-empty");
    } else if (defined.count(s.node_id) > 0) {
      errors.push_back(
          StrCat(path, ".node_id: '", s.node_id, "' is already defined"));
    }
    if (s.kind == ScenarioSellerConfig::Kind::kFresh) {
      CheckProfile(s.fresh, c.num_classes, path, errors);
    } else {
      if (defined.count(s.source_id) == 0) {
        errors.push_back(
            StrCat(path, ".source: '", s.source_id,
                   "' must name the buyer or a previously defined seller"));
      }
      if (absl::Status st = s.augmentation.Validate(); !st.ok()) {
        errors.push_back(StrCat(path, ".augmentation: ", st.message()));
      }
    }
    defined.insert(s.node_id);
  }
  if (c.encoder.kind != EncoderSpec::Kind::kToyProjection) {
    errors.push_back("encoder.kind: scenarios need a toy_projection encoder");
  }
  if (c.encoder.input_dim != c.input_dim) {
    errors.push_back("encoder.input_dim: must equal input_dim");
  }
  if (c.encoder.signal_dims != c.signal_dims) {
    errors.push_back("encoder.signal_dims: must equal signal_dims");
  }
  if (absl::Status st = c.encoder.Validate(); !st.ok()) {
    errors.push_back(StrCat("encoder: ", st.message()));
  }
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) {
    errors.push_back("privacy.epsilon: must lie in (0, 1)");
  }
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    errors.push_back("privacy.delta: must lie in (0, 1)");
  }
  if (!(c.clip_radius > 0.0) || !std::isfinite(c.clip_radius)) {
    errors.push_back("privacy.clip_radius: must be positive");
  }
  if (c.subset_size < 2) errors.push_back("subset_size: must be >= 2");
  return errors;
}

absl::Status ValidationStatus(const std::vector<std::string>& errors) {
  if (errors.empty()) return absl::OkStatus();
  return MakeError(ErrorCode::kValidation, absl::StrJoin(errors, "; "));
}

}  // namespace

absl::StatusOr<ScenarioConfig> ScenarioConfig::FromJson(const Json& json) {
  JsonFieldReader reader(json, "");
  ScenarioConfig c;
  c.num_classes = static_cast<int>(reader.Int("num_classes"));
  c.input_dim = static_cast<int>(reader.Int("input_dim"));
  c.signal_dims = static_cast<int>(reader.Int("signal_dims"));
  {
    JsonFieldReader means =
        reader.Child(reader.Object("class_means"), "class_means");
    if (means.Has("values")) {
      c.class_means = means.Matrix("values");
    } else if (means.Has("generator")) {
      JsonFieldReader gen = means.Child(means.Object("generator"), "generator");
      c.means_scale = gen.Double("scale");
      c.means_seed = OptionalSeed(gen, "seed");
    } else if (reader.Has("class_means")) {
      means.AddError("", "expected 'values' or 'generator'");
    }
  }
  c.class_scale = reader.Double("class_scale");
  {
    JsonFieldReader buyer = reader.Child(reader.Object("buyer"), "buyer");
    c.buyer = ReadProfile(buyer);
  }
  const Json& sellers = reader.Array("sellers");
  for (size_t i = 0; sellers.is_array() && i < sellers.size(); ++i) {
    JsonFieldReader r = reader.Child(sellers[i], StrCat("sellers[", i, "]"));
    ScenarioSellerConfig s;
    s.node_id = r.String("node_id");
    const std::string kind = r.String("kind");
    if (kind == "fresh") {
      s.kind = ScenarioSellerConfig::Kind::kFresh;
      s.fresh = ReadProfile(r);
    } else if (kind == "augmented_copy") {
      s.kind = ScenarioSellerConfig::Kind::kAugmentedCopy;
      s.source_id = r.String("source");
      JsonFieldReader aug = r.Child(r.Object("augmentation"), "augmentation");
      s.augmentation.nuisance_noise_scale = aug.Double("nuisance_noise_scale");
      s.augmentation.nuisance_permute = aug.Bool("nuisance_permute");
      s.augmentation.apply_prob = aug.Double("apply_prob");
      s.augmentation_seed = OptionalSeed(aug, "seed");
    } else if (r.Has("kind")) {
      r.AddError("kind", "expected fresh or augmented_copy");
    }
    c.sellers.push_back(std::move(s));
  }
  {
    JsonFieldReader enc = reader.Child(reader.Object("encoder"), "encoder");
    const std::string kind = enc.String("kind");
    if (kind == "external") {
      c.encoder.kind = EncoderSpec::Kind::kExternal;
    } else if (kind != "toy_projection" && enc.Has("kind")) {
      enc.AddError("kind", "expected toy_projection or external");
    }
    c.encoder.input_dim = static_cast<int>(enc.Int("input_dim"));
    c.encoder.latent_dim = static_cast<int>(enc.Int("latent_dim"));
    c.encoder.signal_dims = static_cast<int>(enc.Int("signal_dims"));
    c.encoder.leakage_alpha = enc.Double("leakage_alpha");
    c.encoder_seed = OptionalSeed(enc, "seed");
  }
  {
    JsonFieldReader privacy = reader.Child(reader.Object("privacy"), "privacy");
    c.epsilon = privacy.Double("epsilon");
    c.delta = privacy.Double("delta");
    c.clip_radius = privacy.Double("clip_radius");
  }
  c.subset_size = reader.Int("subset_size");
  c.master_seed = reader.Uint("master_seed");
  // Structural problems first; semantic checks only make sense on a
  // well-typed config.
  PRIARTA_RETURN_IF_ERROR(reader.Finish(ErrorCode::kValidation));
  PRIARTA_RETURN_IF_ERROR(ValidationStatus(Validate(c)));
  return c;
}

absl::StatusOr<ScenarioConfig> ScenarioConfig::Parse(std::string_view text) {
  auto json = ParseCanonical(text);
  if (!json.ok()) {
    return MakeError(ErrorCode::kValidation, ToStd(json.status().message()));
  }
  return FromJson(*json);
}

Json ScenarioConfig::ToJson() const {
  Json means;
  if (class_means.has_value()) {
    means = Json{{"values", MatrixToJson(*class_means)}};
  } else {
    Json gen{{"scale", means_scale}};
    if (means_seed.has_value()) gen["seed"] = *means_seed;
    means = Json{{"generator", std::move(gen)}};
  }
  Json sellers_json = Json::array();
  for (const ScenarioSellerConfig& s : sellers) {
    Json row;
    if (s.kind == ScenarioSellerConfig::Kind::kFresh) {
      row = ProfileToJson(s.fresh);
      row["kind"] = "fresh";
    } else {
      Json aug = s.augmentation.ToJson();
      if (s.augmentation_seed.has_value()) {
        aug["seed"] = *s.augmentation_seed;
      } else {
        aug.erase("seed");
      }
      row = Json{{"kind", "augmented_copy"},
                 {"source", s.source_id},
                 {"augmentation", std::move(aug)}};
    }
    row["node_id"] = s.node_id;
    sellers_json.push_back(std::move(row));
  }
  Json encoder_json = encoder.ToJson();
  if (encoder_seed.has_value()) {
    encoder_json["seed"] = *encoder_seed;
  } else {
    encoder_json.erase("seed");
  }
  return Json{{"num_classes", num_classes},
              {"input_dim", input_dim},
              {"signal_dims", signal_dims},
              {"class_means", std::move(means)},
              {"class_scale", class_scale},
              {"buyer", ProfileToJson(buyer)},
              {"sellers", std::move(sellers_json)},
              {"encoder", std::move(encoder_json)},
              {"privacy", Json{{"epsilon", epsilon},
                               {"delta", delta},
                               {"clip_radius", clip_radius}}},
              {"subset_size", subset_size},
              {"master_seed", master_seed}};
}

absl::StatusOr<ScenarioConfig> ScenarioConfig::Resolved() const {
  PRIARTA_RETURN_IF_ERROR(ValidationStatus(Validate(*this)));
  ScenarioConfig out = *this;
  if (!out.class_means.has_value()) {
    const uint64_t seed =
        means_seed.value_or(DeriveSeed(master_seed, "class_means"));
    Prng prng(seed);
    Eigen::MatrixXd means(num_classes, signal_dims);
    for (int i = 0; i < num_classes; ++i) {
      for (int j = 0; j < signal_dims; ++j) {
        means(i, j) = means_scale * prng.NextGaussian();
      }
    }
    out.class_means = std::move(means);
    out.means_seed.reset();
  }
  if (!out.buyer.seed.has_value()) {
    out.buyer.seed = DeriveSeed(master_seed, "dataset/buyer");
  }
  for (ScenarioSellerConfig& s : out.sellers) {
    if (s.kind == ScenarioSellerConfig::Kind::kFresh) {
      if (!s.fresh.seed.has_value()) {
        s.fresh.seed = DeriveSeed(master_seed, "dataset/" + s.node_id);
      }
    } else if (!s.augmentation_seed.has_value()) {
      s.augmentation_seed = DeriveSeed(master_seed, "augment/" + s.node_id);
    }
    if (s.augmentation_seed.has_value()) {
      s.augmentation.seed = *s.augmentation_seed;
    }
  }
  if (!out.encoder_seed.has_value()) {
    out.encoder_seed = DeriveSeed(master_seed, "encoder");
  }
  out.encoder.seed = *out.encoder_seed;
  return out;
}

absl::StatusOr<PrivacyBudget> ScenarioConfig::Budget() const {
  return PrivacyBudget::Create(epsilon, delta, clip_radius, subset_size);
}

absl::StatusOr<ValuationParams> ScenarioConfig::Params(
    std::optional<uint64_t> seed) const {
  PRIARTA_ASSIGN_OR_RETURN(PrivacyBudget budget, Budget());
  EncoderSpec spec = encoder;
  if (encoder_seed.has_value()) spec.seed = *encoder_seed;
  return ValuationParams{budget, spec, seed.value_or(master_seed)};
}

ScenarioConfig DefaultScenarioConfig(uint64_t master_seed) {
  const auto probs = [](std::initializer_list<double> p) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(p.size()));
    Eigen::Index i = 0;
    for (double x : p) v(i++) = x;
    return v;
  };
  const auto copy = [](std::string id, std::string source, double noise,
                       bool permute, double prob) {
    ScenarioSellerConfig s;
    s.node_id = std::move(id);
    s.kind = ScenarioSellerConfig::Kind::kAugmentedCopy;
    s.source_id = std::move(source);
    s.augmentation.nuisance_noise_scale = noise;
    s.augmentation.nuisance_permute = permute;
    s.augmentation.apply_prob = prob;
    return s;
  };
  const auto fresh = [](std::string id, Eigen::VectorXd p, int64_t m) {
    ScenarioSellerConfig s;
    s.node_id = std::move(id);
    s.fresh.class_probs = std::move(p);
    s.fresh.m = m;
    return s;
  };

  ScenarioConfig c;
  c.num_classes = 10;
  c.input_dim = 24;
  c.signal_dims = 16;
  c.means_scale = 3.0;
  c.class_scale = 1.0;
  c.buyer.class_probs = probs({0.3, 0.25, 0.2, 0.15, 0.1, 0, 0, 0, 0, 0});
  c.buyer.m = 5000;
  c.sellers.push_back(
      fresh("seller-1", probs({0, 0, 0, 0, 0, 0.2, 0.2, 0.2, 0.2, 0.2}), 5000));
  c.sellers.push_back(fresh(
      "seller-2", probs({0.1, 0.15, 0.2, 0.25, 0.2, 0.1, 0, 0, 0, 0}), 5000));
  c.sellers.push_back(copy("seller-3", "seller-2", 0.5, true, 0.7));
  c.sellers.push_back(copy("seller-4", "buyer", 0.5, true, 0.6));
  c.sellers.push_back(copy("seller-5", "buyer", 0.0, true, 0.5));
  c.sellers.push_back(copy("seller-6", "buyer", 0.3, false, 0.5));
  c.sellers.push_back(copy("seller-7", "buyer", 0.1, false, 0.8));
  c.encoder.kind = EncoderSpec::Kind::kToyProjection;
  c.encoder.input_dim = 24;
  c.encoder.signal_dims = 16;
  c.encoder.latent_dim = 8;
  c.encoder.leakage_alpha = 0.0;
  c.encoder_seed = 17;
  c.encoder.seed = 17;
  c.epsilon = 0.8;
  c.delta = 1e-5;
  c.clip_radius = 20.0;
  c.subset_size = 4000;
  c.master_seed = master_seed;
  return c;
}

absl::StatusOr<ScenarioData> BuildScenario(const ScenarioConfig& config) {
  PRIARTA_ASSIGN_OR_RETURN(ScenarioConfig resolved, config.Resolved());
  ScenarioData out;
  const auto mixture = [&](const Eigen::VectorXd& probs) {
    return MixtureSpec{probs, *resolved.class_means,
                       resolved.input_dim - resolved.signal_dims,
                       resolved.class_scale};
  };
  PRIARTA_ASSIGN_OR_RETURN(
      out.buyer, GenMixtureDataset(mixture(resolved.buyer.class_probs),
                                   resolved.buyer.m, *resolved.buyer.seed));
  std::map<std::string, const RawDataset*> by_id;
  for (const ScenarioSellerConfig& s : resolved.sellers) {
    ScenarioSellerData seller;
    seller.node_id = s.node_id;
    if (s.kind == ScenarioSellerConfig::Kind::kFresh) {
      PRIARTA_ASSIGN_OR_RETURN(seller.data,
                               GenMixtureDataset(mixture(s.fresh.class_probs),
                                                 s.fresh.m, *s.fresh.seed));
    } else {
      const RawDataset& source =
          s.source_id == kBuyerId
              ? out.buyer
              : out.sellers
                    .at(std::distance(resolved.sellers.begin(),
                                      std::find_if(resolved.sellers.begin(),
                                                   resolved.sellers.end(),
                                                   [&](const auto& x) {
                                                     return x.node_id ==
                                                            s.source_id;
                                                   })))
                    .data;
      PRIARTA_ASSIGN_OR_RETURN(
          seller.data, Augment(source, s.augmentation, resolved.signal_dims));
      seller.source_id = s.source_id;
    }
    out.sellers.push_back(std::move(seller));
  }
  out.resolved = std::move(resolved);
  return out;
}

absl::StatusOr<ValuationReport> RunScenarioValuation(
    const ScenarioData& scenario, Objective objective,
    std::optional<uint64_t> seed, bool debias) {
  PRIARTA_ASSIGN_OR_RETURN(ValuationParams params,
                           scenario.resolved.Params(seed));
  params.debias = debias;
  std::vector<std::unique_ptr<SellerNode>> nodes;
  std::vector<SellerEndpoint> endpoints;
  for (const ScenarioSellerData& s : scenario.sellers) {
    nodes.push_back(std::make_unique<SellerNode>(s.node_id, s.data));
    endpoints.push_back(SellerEndpoint{s.node_id, nodes.back().get()});
  }
  return RunValuation(scenario.buyer, endpoints, params, objective);
}

absl::StatusOr<std::vector<RobustnessEntry>> ComputeScenarioRobustness(
    const ScenarioData& scenario, bool shared_seeds) {
  const ScenarioConfig& config = scenario.resolved;
  PRIARTA_ASSIGN_OR_RETURN(ValuationParams params, config.Params());
  PRIARTA_ASSIGN_OR_RETURN(GaussianSummary buyer,
                           ComputeBuyerSummary(scenario.buyer, params));
  std::vector<RobustnessEntry> out;
  for (const ScenarioSellerData& s : scenario.sellers) {
    if (s.source_id.empty()) continue;
    const RawDataset* source = &scenario.buyer;
    for (const ScenarioSellerData& other : scenario.sellers) {
      if (other.node_id == s.source_id) source = &other.data;
    }
    const uint64_t seed =
        DeriveSeed(config.master_seed, "robustness/" + s.node_id);
    const uint64_t augmented_seed =
        shared_seeds ? seed : DeriveSeed(seed, "independent");
    PRIARTA_ASSIGN_OR_RETURN(
        SellerStats baseline,
        ComputeSellerStats(*source, params.encoder, params.budget,
                           DerivePipelineSeeds(seed)));
    PRIARTA_ASSIGN_OR_RETURN(
        SellerStats augmented,
        ComputeSellerStats(s.data, params.encoder, params.budget,
                           DerivePipelineSeeds(augmented_seed)));
    PRIARTA_ASSIGN_OR_RETURN(
        RobustnessEntry entry,
        ComputeRobustness(buyer, baseline.summary, augmented.summary));
    entry.node_id = s.node_id;
    entry.source_id = s.source_id;
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace priarta

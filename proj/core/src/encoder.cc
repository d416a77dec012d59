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

#include "priarta/encoder.h"

#include <cmath>
#include <cstdio>
#include <utility>

#include "absl/strings/str_cat.h"
#include "priarta/errors.h"
#include "priarta/logging.h"
#include "priarta/random.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

constexpr double kProbabilityTolerance = 1e-9;

absl::Status ValidateProbabilities(const Eigen::VectorXd& probs,
                                   std::string_view what) {
  if (probs.size() == 0) {
    return MakeError(ErrorCode::kInvalidParameter, StrCat(what, " is empty"));
  }
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs(i)) || probs(i) < 0.0) {
      return MakeError(
          ErrorCode::kInvalidParameter,
          StrCat(what, "[", i, "] = ", probs(i), " is not a probability"));
    }
  }
  if (std::abs(probs.sum() - 1.0) > kProbabilityTolerance) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat(what, " sums to ", probs.sum(), ", not 1"));
  }
  return absl::OkStatus();
}

int SampleClass(const Eigen::VectorXd& probs, double u) {
  double cumulative = 0.0;
  int last_positive = 0;
  for (Eigen::Index k = 0; k < probs.size(); ++k) {
    if (probs(k) <= 0.0) continue;
    last_positive = static_cast<int>(k);
    cumulative += probs(k);
    if (u < cumulative) return static_cast<int>(k);
  }
  return last_positive;
}

}  // namespace

std::string_view EncoderKindName(EncoderSpec::Kind kind) {
  return kind == EncoderSpec::Kind::kToyProjection ? "toy_projection"
                                                   : "external";
}

absl::Status EncoderSpec::Validate() const {
  if (latent_dim < 1) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("latent_dim must be >= 1, got ", latent_dim));
  }
  if (kind == Kind::kExternal) return absl::OkStatus();
  if (input_dim < 1) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("input_dim must be >= 1, got ", input_dim));
  }
  if (signal_dims < 0 || signal_dims > input_dim) {
    return MakeError(
        ErrorCode::kInvalidParameter,
        StrCat("signal_dims must lie in [0, input_dim], got ", signal_dims));
  }
  if (!(leakage_alpha >= 0.0 && leakage_alpha <= 1.0)) {
    return MakeError(
        ErrorCode::kInvalidParameter,
        StrCat("leakage_alpha must lie in [0, 1], got ", leakage_alpha));
  }
  if (latent_dim > signal_dims) {
    PRIARTA_LOG(kWarning) << "latent_dim " << latent_dim
                          << " exceeds signal_dims " << signal_dims;
  }
  return absl::OkStatus();
}

Json EncoderSpec::ToJson() const {
  return Json{{"kind", std::string(EncoderKindName(kind))},
              {"seed", seed},
              {"input_dim", input_dim},
              {"latent_dim", latent_dim},
              {"signal_dims", signal_dims},
              {"leakage_alpha", leakage_alpha}};
}

absl::StatusOr<EncoderSpec> EncoderSpec::FromJson(const Json& json) {
  JsonFieldReader reader(json, "encoder");
  EncoderSpec spec;
  const std::string kind = reader.String("kind");
  if (kind == "toy_projection") {
    spec.kind = Kind::kToyProjection;
  } else if (kind == "external") {
    spec.kind = Kind::kExternal;
  } else if (reader.Has("kind")) {
    reader.AddError("kind", "expected toy_projection or external");
  }
  spec.seed = reader.Uint("seed");
  spec.input_dim = static_cast<int>(reader.Int("input_dim"));
  spec.latent_dim = static_cast<int>(reader.Int("latent_dim"));
  spec.signal_dims = static_cast<int>(reader.Int("signal_dims"));
  spec.leakage_alpha = reader.Double("leakage_alpha");
  PRIARTA_RETURN_IF_ERROR(reader.Finish(ErrorCode::kValidation));
  PRIARTA_RETURN_IF_ERROR(spec.Validate());
  return spec;
}

std::string EncoderSpec::Fingerprint() const {
  char buf[17];
  std::snprintf(
      buf, sizeof(buf), "%016llx",
      static_cast<unsigned long long>(Fnv1a64(CanonicalDump(ToJson()))));
  return buf;
}

absl::Status RawDataset::Validate() const {
  if (points.rows() < 1 || points.cols() < 1) {
    return MakeError(ErrorCode::kEmptyInput, "dataset has no points");
  }
  if (!points.allFinite()) {
    return MakeError(ErrorCode::kNumericInput, "dataset has non-finite points");
  }
  if (static_cast<Eigen::Index>(labels.size()) != points.rows()) {
    return MakeError(ErrorCode::kShapeMismatch,
                     StrCat("dataset has ", points.rows(), " points but ",
                            labels.size(), " labels"));
  }
  PRIARTA_RETURN_IF_ERROR(ValidateProbabilities(class_probs, "class_probs"));
  for (int label : labels) {
    if (label < 0 || label >= class_probs.size()) {
      return MakeError(
          ErrorCode::kInvalidParameter,
          StrCat("label ", label, " outside [0, ", class_probs.size(), ")"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<RawDataset> GenMixtureDataset(const MixtureSpec& mixture,
                                             int64_t m, uint64_t seed) {
  PRIARTA_RETURN_IF_ERROR(
      ValidateProbabilities(mixture.class_probs, "class_probs"));
  if (mixture.class_means.rows() != mixture.class_probs.size() ||
      mixture.class_means.cols() < 1) {
    return MakeError(ErrorCode::kShapeMismatch,
                     StrCat("class_means must be ", mixture.class_probs.size(),
                            " x signal_dims, got ", mixture.class_means.rows(),
                            "x", mixture.class_means.cols()));
  }
  if (!mixture.class_means.allFinite()) {
    return MakeError(ErrorCode::kNumericInput, "class_means not finite");
  }
  if (!(mixture.class_scale >= 0.0) || !std::isfinite(mixture.class_scale)) {
    return MakeError(
        ErrorCode::kInvalidParameter,
        StrCat("class_scale must be >= 0, got ", mixture.class_scale));
  }
  if (mixture.nuisance_dims < 0) {
    return MakeError(ErrorCode::kInvalidParameter, "negative nuisance_dims");
  }
  if (m < 1) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("dataset size must be >= 1, got ", m));
  }
  const int s = static_cast<int>(mixture.class_means.cols());
  const int p = s + mixture.nuisance_dims;
  RawDataset out;
  out.points.resize(m, p);
  out.labels.resize(m);
  out.class_probs = mixture.class_probs;
  Prng prng(seed);
  for (int64_t i = 0; i < m; ++i) {
    const int label = SampleClass(mixture.class_probs, prng.NextUniform());
    out.labels[i] = label;
    for (int j = 0; j < s; ++j) {
      out.points(i, j) = mixture.class_means(label, j) +
                         mixture.class_scale * prng.NextGaussian();
    }
    for (int j = s; j < p; ++j) out.points(i, j) = prng.NextGaussian();
  }
  return out;
}

Eigen::MatrixXd ProjectionMatrix(const EncoderSpec& spec) {
  Eigen::MatrixXd projection(spec.input_dim, spec.latent_dim);
  Prng prng(spec.seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.latent_dim));
  for (int i = 0; i < spec.input_dim; ++i) {
    for (int j = 0; j < spec.latent_dim; ++j) {
      projection(i, j) = scale * prng.NextGaussian();
    }
  }
  return projection;
}

absl::StatusOr<Eigen::MatrixXd> Encode(const EncoderSpec& spec,
                                       const RawDataset& data) {
  PRIARTA_RETURN_IF_ERROR(spec.Validate());
  if (spec.kind != EncoderSpec::Kind::kToyProjection) {
    return MakeError(ErrorCode::kSpecMismatch,
                     "external encoders supply embeddings through files");
  }
  if (data.dim() != spec.input_dim) {
    return MakeError(ErrorCode::kShapeMismatch,
                     StrCat("dataset has ", data.dim(),
                            " input dims, encoder expects ", spec.input_dim));
  }
  if (!data.points.allFinite()) {
    return MakeError(ErrorCode::kNumericInput, "dataset has non-finite points");
  }
  const Eigen::MatrixXd projection = ProjectionMatrix(spec);
  const int s = spec.signal_dims;
  const int p = spec.input_dim;
  const int d = spec.latent_dim;
  // Explicit loops with a fixed summation order: with alpha == 0 the nuisance
  // block is skipped entirely, so the output is bit-identical for inputs that
  // differ only there.
  const bool leaks = spec.leakage_alpha != 0.0;
  Eigen::MatrixXd out(data.size(), d);
  for (int i = 0; i < data.size(); ++i) {
    for (int j = 0; j < d; ++j) {
      double acc = 0.0;
      for (int k = 0; k < s; ++k) acc += data.points(i, k) * projection(k, j);
      if (leaks) {
        for (int k = s; k < p; ++k) {
          acc += (spec.leakage_alpha * data.points(i, k)) * projection(k, j);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

absl::Status AugmentationSpec::Validate() const {
  if (!(nuisance_noise_scale >= 0.0) || !std::isfinite(nuisance_noise_scale)) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("nuisance_noise_scale must be >= 0, got ",
                            nuisance_noise_scale));
  }
  if (!(apply_prob >= 0.0 && apply_prob <= 1.0)) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("apply_prob must lie in [0, 1], got ", apply_prob));
  }
  return absl::OkStatus();
}

Json AugmentationSpec::ToJson() const {
  return Json{{"nuisance_noise_scale", nuisance_noise_scale},
              {"nuisance_permute", nuisance_permute},
              {"apply_prob", apply_prob},
              {"seed", seed}};
}

absl::StatusOr<AugmentationSpec> AugmentationSpec::FromJson(const Json& json) {
  JsonFieldReader reader(json, "augmentation");
  AugmentationSpec aug;
  aug.nuisance_noise_scale = reader.Double("nuisance_noise_scale");
  aug.nuisance_permute = reader.Bool("nuisance_permute");
  aug.apply_prob = reader.Double("apply_prob");
  aug.seed = reader.Uint("seed");
  PRIARTA_RETURN_IF_ERROR(reader.Finish(ErrorCode::kValidation));
  PRIARTA_RETURN_IF_ERROR(aug.Validate());
  return aug;
}

absl::StatusOr<RawDataset> Augment(const RawDataset& data,
                                   const AugmentationSpec& aug,
                                   int signal_dims) {
  PRIARTA_RETURN_IF_ERROR(aug.Validate());
  if (signal_dims < 0 || signal_dims > data.dim()) {
    return MakeError(
        ErrorCode::kShapeMismatch,
        StrCat("signal_dims ", signal_dims, " outside [0, ", data.dim(), "]"));
  }
  RawDataset out = data;
  Prng prng(aug.seed);
  const int p = data.dim();
  const int nuisance = p - signal_dims;
  for (int i = 0; i < data.size(); ++i) {
    if (!(prng.NextUniform() < aug.apply_prob)) continue;
    if (aug.nuisance_noise_scale > 0.0) {
      for (int j = signal_dims; j < p; ++j) {
        out.points(i, j) += aug.nuisance_noise_scale * prng.NextGaussian();
      }
    }
    if (aug.nuisance_permute) {
      for (int j = nuisance - 1; j > 0; --j) {
        const int k = static_cast<int>(prng.UniformIndex(j + 1));
        std::swap(out.points(i, signal_dims + j),
                  out.points(i, signal_dims + k));
      }
    }
  }
  return out;
}

}  // namespace priarta

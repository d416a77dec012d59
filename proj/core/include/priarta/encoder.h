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

// The shared mapping function: a seeded linear projection with an explicit
// signal/nuisance input split, plus the synthetic data and augmentation
// generators that feed it.
//
// An input row is [signal (s coords) | nuisance (p - s coords)]. The toy
// encoder maps it to
//   z = [signal | alpha * nuisance] * P,   P in R^{p x d}, P_ij ~ N(0, 1/d),
// so alpha = 0 makes the embedding exactly invariant to anything that only
// touches the nuisance block, which is where augmentations act.

#ifndef PRIARTA_ENCODER_H_
#define PRIARTA_ENCODER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "priarta/canonical_text.h"

namespace priarta {

struct EncoderSpec {
  enum class Kind { kToyProjection, kExternal };

  Kind kind = Kind::kToyProjection;
  uint64_t seed = 0;
  int input_dim = 1;
  int latent_dim = 1;
  int signal_dims = 1;
  double leakage_alpha = 0.0;

  int nuisance_dims() const { return input_dim - signal_dims; }

  // Logs a warning (does not fail) when latent_dim > signal_dims.
  absl::Status Validate() const;

  Json ToJson() const;
  static absl::StatusOr<EncoderSpec> FromJson(const Json& json);

  // 16 hex digits identifying the spec (hash of its canonical text).
  std::string Fingerprint() const;

  friend bool operator==(const EncoderSpec&, const EncoderSpec&) = default;
};

std::string_view EncoderKindName(EncoderSpec::Kind kind);

struct RawDataset {
  Eigen::MatrixXd points;       // m x p
  std::vector<int> labels;      // metadata only
  Eigen::VectorXd class_probs;  // generating class mix, sums to 1

  int size() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
  absl::Status Validate() const;
};

struct MixtureSpec {
  Eigen::VectorXd class_probs;  // k
  Eigen::MatrixXd class_means;  // k x s, signal block only
  int nuisance_dims = 0;
  double class_scale = 1.0;  // >= 0
};

// Draws m points: class ~ class_probs, signal ~ N(mean_class, scale^2 I),
// nuisance ~ N(0, I). Deterministic in seed.
absl::StatusOr<RawDataset> GenMixtureDataset(const MixtureSpec& mixture,
                                             int64_t m, uint64_t seed);

// The frozen projection P (p x d) for a toy spec.
Eigen::MatrixXd ProjectionMatrix(const EncoderSpec& spec);

// Embeds every point; returns m x latent_dim. Only toy specs can encode;
// external encoders deliver embeddings through files.
absl::StatusOr<Eigen::MatrixXd> Encode(const EncoderSpec& spec,
                                       const RawDataset& data);

struct AugmentationSpec {
  double nuisance_noise_scale = 0.0;
  bool nuisance_permute = false;
  double apply_prob = 0.0;
  uint64_t seed = 0;

  absl::Status Validate() const;
  Json ToJson() const;
  static absl::StatusOr<AugmentationSpec> FromJson(const Json& json);

  friend bool operator==(const AugmentationSpec&,
                         const AugmentationSpec&) = default;
};

// Per point, with probability apply_prob: adds N(0, scale^2) noise to the
// nuisance block (columns >= signal_dims) and optionally permutes it. The
// signal block and labels are never touched.
absl::StatusOr<RawDataset> Augment(const RawDataset& data,
                                   const AugmentationSpec& aug,
                                   int signal_dims);

}  // namespace priarta

#endif  // PRIARTA_ENCODER_H_

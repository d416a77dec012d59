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

// Norm clipping and Gaussian summarization of embedding sets.

#ifndef PRIARTA_STATISTICS_H_
#define PRIARTA_STATISTICS_H_

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "priarta/gaussian_geometry.h"

namespace priarta {

// n vectors in d dimensions (one per row) with the clip radius they were, or
// will be, bounded by. When clipped() is true every row norm is at most
// clip_radius() * (1 + 1e-12).
class EmbeddingSet {
 public:
  // Validates finiteness and R > 0; does not clip. Summaries need n >= 2, but
  // single-row sets are allowed here.
  static absl::StatusOr<EmbeddingSet> Create(Eigen::MatrixXd vectors,
                                             double clip_radius,
                                             bool clipped = false);

  int size() const { return static_cast<int>(vectors_.rows()); }
  int dim() const { return static_cast<int>(vectors_.cols()); }
  const Eigen::MatrixXd& vectors() const { return vectors_; }
  double clip_radius() const { return clip_radius_; }
  bool clipped() const { return clipped_; }

 private:
  EmbeddingSet(Eigen::MatrixXd vectors, double clip_radius, bool clipped)
      : vectors_(std::move(vectors)),
        clip_radius_(clip_radius),
        clipped_(clipped) {}

  Eigen::MatrixXd vectors_;
  double clip_radius_;
  bool clipped_;
};

// Projects every row onto the l2 ball of radius R: rows with norm > R are
// rescaled to norm R, others are left bit-identical.
absl::StatusOr<EmbeddingSet> ClipToBall(const Eigen::MatrixXd& vectors,
                                        double clip_radius);

absl::StatusOr<Eigen::VectorXd> SampleMean(const EmbeddingSet& set);

// Unbiased sample covariance, 1/(n-1) normalizer.
absl::StatusOr<SymmetricMatrix> SampleCovariance(const EmbeddingSet& set);

absl::StatusOr<GaussianSummary> Summarize(const EmbeddingSet& set);

// Removes the sigma^2 I inflation that per-entry Gaussian noise adds to a
// covariance, projecting the result back onto the PSD cone. sigma == 0
// returns the input unchanged.
absl::StatusOr<GaussianSummary> DebiasCovariance(const GaussianSummary& summary,
                                                 double sigma);

}  // namespace priarta

#endif  // PRIARTA_STATISTICS_H_

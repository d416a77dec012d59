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

#include "priarta/statistics.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "priarta/errors.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

// Plain-loop l2 norm; one fixed summation order for every caller.
double RowNorm(const Eigen::MatrixXd& m, Eigen::Index row) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) sum += m(row, j) * m(row, j);
  return std::sqrt(sum);
}

}  // namespace

absl::StatusOr<EmbeddingSet> EmbeddingSet::Create(Eigen::MatrixXd vectors,
                                                  double clip_radius,
                                                  bool clipped) {
  if (!(clip_radius > 0.0) || !std::isfinite(clip_radius)) {
    return MakeError(
        ErrorCode::kInvalidParameter,
        StrCat("clip radius must be positive and finite, got ", clip_radius));
  }
  if (vectors.cols() < 1) {
    return MakeError(ErrorCode::kShapeMismatch,
                     "embedding vectors must have at least one dimension");
  }
  if (!vectors.allFinite()) {
    return MakeError(ErrorCode::kNumericInput,
                     "embedding vectors have non-finite entries");
  }
  return EmbeddingSet(std::move(vectors), clip_radius, clipped);
}

absl::StatusOr<EmbeddingSet> ClipToBall(const Eigen::MatrixXd& vectors,
                                        double clip_radius) {
  PRIARTA_ASSIGN_OR_RETURN(EmbeddingSet set,
                           EmbeddingSet::Create(vectors, clip_radius));
  Eigen::MatrixXd clipped = set.vectors();
  for (Eigen::Index i = 0; i < clipped.rows(); ++i) {
    const double norm = RowNorm(clipped, i);
    if (norm <= clip_radius) continue;
    // Step the factor down by ulps until the rescaled norm is <= R, so that a
    // second clip is a no-op.
    const Eigen::RowVectorXd row = clipped.row(i);
    double scale = clip_radius / norm;
    while (true) {
      clipped.row(i) = row * scale;
      if (RowNorm(clipped, i) <= clip_radius) break;
      scale = std::nextafter(scale, 0.0);
    }
  }
  return EmbeddingSet::Create(std::move(clipped), clip_radius,
                              /*clipped=*/true);
}

absl::StatusOr<Eigen::VectorXd> SampleMean(const EmbeddingSet& set) {
  if (set.size() == 0) {
    return MakeError(ErrorCode::kEmptyInput, "mean of an empty embedding set");
  }
  return Eigen::VectorXd(set.vectors().colwise().mean().transpose());
}

absl::StatusOr<SymmetricMatrix> SampleCovariance(const EmbeddingSet& set) {
  if (set.size() < 2) {
    return MakeError(
        ErrorCode::kInsufficientSamples,
        StrCat("covariance needs at least 2 vectors, got ", set.size()));
  }
  PRIARTA_ASSIGN_OR_RETURN(Eigen::VectorXd mean, SampleMean(set));
  const Eigen::MatrixXd centered = set.vectors().rowwise() - mean.transpose();
  const Eigen::MatrixXd scatter = centered.transpose() * centered;
  return SymmetricMatrix::Create(scatter / static_cast<double>(set.size() - 1));
}

absl::StatusOr<GaussianSummary> Summarize(const EmbeddingSet& set) {
  PRIARTA_ASSIGN_OR_RETURN(SymmetricMatrix covariance, SampleCovariance(set));
  PRIARTA_ASSIGN_OR_RETURN(Eigen::VectorXd mean, SampleMean(set));
  return GaussianSummary::Create(std::move(mean), covariance, set.size());
}

absl::StatusOr<GaussianSummary> DebiasCovariance(const GaussianSummary& summary,
                                                 double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("noise scale must be >= 0, got ", sigma));
  }
  if (sigma == 0.0) return summary;
  const int d = summary.dim();
  PRIARTA_ASSIGN_OR_RETURN(
      SymmetricMatrix shifted,
      SymmetricMatrix::Create(summary.covariance().matrix() -
                              sigma * sigma * Eigen::MatrixXd::Identity(d, d)));
  PRIARTA_ASSIGN_OR_RETURN(SymmetricMatrix projected, ProjectPsd(shifted));
  return GaussianSummary::Create(summary.mean(), projected, summary.count());
}

}  // namespace priarta

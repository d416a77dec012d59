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

#include "priarta/privacy.h"

#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "priarta/errors.h"
#include "priarta/logging.h"
#include "priarta/random.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

absl::Status ValidateRadiusAndCount(double clip_radius, int64_t n) {
  if (!(clip_radius > 0.0) || !std::isfinite(clip_radius)) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("clip radius must be positive, got ", clip_radius));
  }
  if (n < 2) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("subset size must be >= 2, got ", n));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon,
                                                    double delta,
                                                    double clip_radius,
                                                    int64_t subset_size) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("epsilon must lie in (0, 1), got ", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("delta must lie in (0, 1), got ", delta));
  }
  PRIARTA_RETURN_IF_ERROR(ValidateRadiusAndCount(clip_radius, subset_size));
  return PrivacyBudget(epsilon, delta, clip_radius, subset_size);
}

absl::StatusOr<double> MeanSensitivity(double clip_radius, int64_t n) {
  PRIARTA_RETURN_IF_ERROR(ValidateRadiusAndCount(clip_radius, n));
  return 2.0 * clip_radius / static_cast<double>(n);
}

absl::StatusOr<double> CovarianceSensitivity(double clip_radius, int64_t n) {
  PRIARTA_RETURN_IF_ERROR(ValidateRadiusAndCount(clip_radius, n));
  const double r2 = clip_radius * clip_radius;
  const double nd = static_cast<double>(n);
  return 4.0 * r2 / nd + 8.0 * r2 / (nd * nd);
}

absl::StatusOr<NoiseCalibration> CalibrateSigma(const PrivacyBudget& budget) {
  NoiseCalibration out;
  PRIARTA_ASSIGN_OR_RETURN(out.delta_mu, MeanSensitivity(budget.clip_radius(),
                                                         budget.subset_size()));
  PRIARTA_ASSIGN_OR_RETURN(
      out.delta_sigma,
      CovarianceSensitivity(budget.clip_radius(), budget.subset_size()));
  out.c = std::nextafter(std::sqrt(2.0 * std::log(1.25 / budget.delta())),
                         std::numeric_limits<double>::infinity());
  out.sigma = out.c * out.delta_sigma / budget.epsilon();
  out.mean_sensitivity_dominates = out.delta_mu > out.delta_sigma;
  if (out.mean_sensitivity_dominates) {
    PRIARTA_LOG(kWarning) << "mean sensitivity " << out.delta_mu
                          << " exceeds covariance sensitivity "
                          << out.delta_sigma << " (R = " << budget.clip_radius()
                          << "); sigma is calibrated from the covariance bound";
  }
  return out;
}

absl::StatusOr<EmbeddingSet> ApplyGaussianMechanism(const EmbeddingSet& set,
                                                    double sigma,
                                                    uint64_t seed) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("noise scale must be positive, got ", sigma));
  }
  if (!set.clipped()) {
    return MakeError(ErrorCode::kInvalidParameter,
                     "Gaussian mechanism requires a clipped embedding set");
  }
  Prng prng(seed);
  Eigen::MatrixXd noisy = set.vectors();
  for (Eigen::Index i = 0; i < noisy.rows(); ++i) {
    for (Eigen::Index j = 0; j < noisy.cols(); ++j) {
      noisy(i, j) += sigma * prng.NextGaussian();
    }
  }
  return EmbeddingSet::Create(std::move(noisy), set.clip_radius(),
                              /*clipped=*/false);
}

}  // namespace priarta

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

// Sensitivity bounds for the mean and covariance of l2-bounded vectors,
// Gaussian-mechanism calibration, and per-entry noise application.
//
// For n vectors with |z_j| <= R, replacing one vector moves
//   the mean by at most         2R/n            (l2)
//   the covariance by at most   4R^2/n + 8R^2/n^2 (Frobenius).
// Noise is calibrated from the covariance bound:
//   sigma = c * Delta_Sigma / epsilon,  c = sqrt(2 ln(1.25 / delta)),
// valid for epsilon, delta in (0, 1).
//
// Seeded noise (see ApplyGaussianMechanism) is reproducible by design and
// therefore carries no privacy guarantee; deployments must draw seeds from
// SecureSeed().

#ifndef PRIARTA_PRIVACY_H_
#define PRIARTA_PRIVACY_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "priarta/statistics.h"

namespace priarta {

class PrivacyBudget {
 public:
  // Requires 0 < epsilon < 1, 0 < delta < 1, R > 0, subset_size >= 2.
  static absl::StatusOr<PrivacyBudget> Create(double epsilon, double delta,
                                              double clip_radius,
                                              int64_t subset_size);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  double clip_radius() const { return clip_radius_; }
  int64_t subset_size() const { return subset_size_; }

 private:
  PrivacyBudget(double epsilon, double delta, double clip_radius,
                int64_t subset_size)
      : epsilon_(epsilon),
        delta_(delta),
        clip_radius_(clip_radius),
        subset_size_(subset_size) {}

  double epsilon_;
  double delta_;
  double clip_radius_;
  int64_t subset_size_;
};

struct NoiseCalibration {
  double delta_mu = 0.0;
  double delta_sigma = 0.0;
  double c = 0.0;
  double sigma = 0.0;
  // True when the mean bound exceeds the covariance bound (R < ~1/2), so sigma
  // calibrated from Delta_Sigma under-covers the mean.
  bool mean_sensitivity_dominates = false;
};

absl::StatusOr<double> MeanSensitivity(double clip_radius, int64_t n);
absl::StatusOr<double> CovarianceSensitivity(double clip_radius, int64_t n);

// c is nudged one ulp above sqrt(2 ln(1.25/delta)) so that c^2 exceeds the
// threshold strictly in floating point. Logs a warning when
// mean_sensitivity_dominates.
absl::StatusOr<NoiseCalibration> CalibrateSigma(const PrivacyBudget& budget);

// Adds an independent N(0, sigma^2) draw to every entry, in row-major order,
// from Prng(seed). Input must be clipped; the output is not re-clipped and
// has its clipped flag cleared.
absl::StatusOr<EmbeddingSet> ApplyGaussianMechanism(const EmbeddingSet& set,
                                                    double sigma,
                                                    uint64_t seed);

}  // namespace priarta

#endif  // PRIARTA_PRIVACY_H_

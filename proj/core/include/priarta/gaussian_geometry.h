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

// Symmetric-matrix numerics and the closed-form 2-Wasserstein distance between
// Gaussian distributions.
//
//   W2(a, b)^2 = |mu_a - mu_b|^2 + tr(S_a) + tr(S_b)
//                - 2 tr((S_a^1/2 S_b S_a^1/2)^1/2)
//
// All routines work in double precision and are pure functions of their
// inputs.

#ifndef PRIARTA_GAUSSIAN_GEOMETRY_H_
#define PRIARTA_GAUSSIAN_GEOMETRY_H_

#include <cstdint>

#include "Eigen/Dense"
#include "absl/status/statusor.h"

namespace priarta {

// Relative tolerance for negative eigenvalues treated as round-off.
inline constexpr double kPsdTolerance = 1e-10;
// Relative tolerance for linear-algebra residuals.
inline constexpr double kLinearAlgebraTolerance = 1e-8;

// Dense real symmetric matrix. Construction symmetrizes the input as
// (A + A^T) / 2, so entries(i, j) == entries(j, i) holds exactly.
class SymmetricMatrix {
 public:
  // Fails on non-square, empty, or non-finite input.
  static absl::StatusOr<SymmetricMatrix> Create(const Eigen::MatrixXd& entries);
  static SymmetricMatrix Identity(int dim);
  static SymmetricMatrix Zero(int dim);
  // Fails on empty or non-finite input.
  static absl::StatusOr<SymmetricMatrix> Diagonal(const Eigen::VectorXd& diag);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  double Trace() const { return entries_.trace(); }
  double FrobeniusNorm() const { return entries_.norm(); }

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_ == b.entries_;
  }

 private:
  explicit SymmetricMatrix(Eigen::MatrixXd entries)
      : entries_(std::move(entries)) {}

  Eigen::MatrixXd entries_;
};

struct EigenDecomposition {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(i) <-> values(i)
};

absl::StatusOr<EigenDecomposition> SymEig(const SymmetricMatrix& a);

// Returns A with negative eigenvalues set to zero. Eigenvalues below
// -kPsdTolerance * max|lambda| are rejected with NOT_PSD. A matrix with no
// negative eigenvalue is returned unchanged (bit-exact).
absl::StatusOr<SymmetricMatrix> ClampPsd(const SymmetricMatrix& a);

// Nearest PSD matrix in Frobenius norm: every negative eigenvalue is set to
// zero with no tolerance check.
absl::StatusOr<SymmetricMatrix> ProjectPsd(const SymmetricMatrix& a);

// Principal square root of a PSD matrix (after ClampPsd).
absl::StatusOr<SymmetricMatrix> SqrtmPsd(const SymmetricMatrix& a);

// The (mean, covariance, count) triple a seller publishes. The covariance is
// stored PSD-clamped.
class GaussianSummary {
 public:
  static absl::StatusOr<GaussianSummary> Create(
      Eigen::VectorXd mean, const SymmetricMatrix& covariance, int64_t count);

  int dim() const { return static_cast<int>(mean_.size()); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const SymmetricMatrix& covariance() const { return covariance_; }
  int64_t count() const { return count_; }

  friend bool operator==(const GaussianSummary& a, const GaussianSummary& b) {
    return a.count_ == b.count_ && a.mean_.size() == b.mean_.size() &&
           a.mean_ == b.mean_ && a.covariance_ == b.covariance_;
  }

 private:
  GaussianSummary(Eigen::VectorXd mean, SymmetricMatrix covariance,
                  int64_t count)
      : mean_(std::move(mean)),
        covariance_(std::move(covariance)),
        count_(count) {}

  Eigen::VectorXd mean_;
  SymmetricMatrix covariance_;
  int64_t count_;
};

// Closed-form 2-Wasserstein distance between N(a.mean, a.cov) and
// N(b.mean, b.cov).
//
// The trace cross term equals the nuclear norm of S_a^1/2 S_b^1/2, so the
// covariance part is evaluated as the Procrustes residual
// |S_a^1/2 - S_b^1/2 U|_F with U the orthogonal polar factor. Being a norm of
// a difference, it keeps full relative accuracy when a and b are close, where
// the trace difference would cancel catastrophically.
absl::StatusOr<double> Wasserstein2Gaussian(const GaussianSummary& a,
                                            const GaussianSummary& b);

// The same distance evaluated literally: the inner product
// S_a^1/2 S_b S_a^1/2 is re-symmetrized, its square root taken through the
// eigendecomposition, and the scalar under the outer root clamped at zero.
// Accurate to about sqrt(eps) * scale near zero; kept as an independent route.
absl::StatusOr<double> Wasserstein2GaussianInnerRoot(const GaussianSummary& a,
                                                     const GaussianSummary& b);

}  // namespace priarta

#endif  // PRIARTA_GAUSSIAN_GEOMETRY_H_

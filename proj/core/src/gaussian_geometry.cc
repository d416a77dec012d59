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

#include "priarta/gaussian_geometry.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "Eigen/SVD"
#include "absl/strings/str_cat.h"
#include "priarta/errors.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

Eigen::MatrixXd Symmetrized(const Eigen::MatrixXd& m) {
  return (m + m.transpose()) * 0.5;
}

Eigen::MatrixXd Reconstruct(const EigenDecomposition& eig,
                            const Eigen::VectorXd& values) {
  return eig.vectors * values.asDiagonal() * eig.vectors.transpose();
}

// Lower bound below which a negative eigenvalue is not round-off.
double NegativeFloor(const Eigen::VectorXd& values) {
  const double radius = values.cwiseAbs().maxCoeff();
  return -kPsdTolerance * radius;
}

}  // namespace

absl::StatusOr<SymmetricMatrix> SymmetricMatrix::Create(
    const Eigen::MatrixXd& entries) {
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    return MakeError(ErrorCode::kShapeMismatch,
                     StrCat("symmetric matrix must be square and "
                            "non-empty, got ",
                            entries.rows(), "x", entries.cols()));
  }
  if (!entries.allFinite()) {
    return MakeError(ErrorCode::kNumericInput,
                     "symmetric matrix has non-finite entries");
  }
  return SymmetricMatrix(Symmetrized(entries));
}

SymmetricMatrix SymmetricMatrix::Identity(int dim) {
  return SymmetricMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SymmetricMatrix SymmetricMatrix::Zero(int dim) {
  return SymmetricMatrix(Eigen::MatrixXd::Zero(dim, dim));
}

absl::StatusOr<SymmetricMatrix> SymmetricMatrix::Diagonal(
    const Eigen::VectorXd& diag) {
  if (diag.size() == 0) {
    return MakeError(ErrorCode::kShapeMismatch, "empty diagonal");
  }
  if (!diag.allFinite()) {
    return MakeError(ErrorCode::kNumericInput,
                     "diagonal has non-finite entries");
  }
  return SymmetricMatrix(diag.asDiagonal().toDenseMatrix());
}

absl::StatusOr<EigenDecomposition> SymEig(const SymmetricMatrix& a) {
  const Eigen::MatrixXd& m = a.matrix();
  if (!m.allFinite()) {
    return MakeError(ErrorCode::kNumericInput,
                     "eigendecomposition input has non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    return MakeError(
        ErrorCode::kConvergence,
        StrCat("symmetric eigensolver did not converge for ", a.dim(), "x",
               a.dim(), " matrix with trace ", a.Trace()));
  }
  // Eigen sorts ascending.
  const int d = a.dim();
  EigenDecomposition out{Eigen::VectorXd(d), Eigen::MatrixXd(d, d)};
  for (int i = 0; i < d; ++i) {
    out.values(i) = solver.eigenvalues()(d - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

absl::StatusOr<SymmetricMatrix> ClampPsd(const SymmetricMatrix& a) {
  PRIARTA_ASSIGN_OR_RETURN(EigenDecomposition eig, SymEig(a));
  const double smallest = eig.values(eig.values.size() - 1);
  if (smallest >= 0.0) return a;
  if (smallest < NegativeFloor(eig.values)) {
    return MakeError(ErrorCode::kNotPsd,
                     StrCat("matrix is not positive semidefinite: "
                            "eigenvalue ",
                            smallest, " with spectral radius ",
                            eig.values.cwiseAbs().maxCoeff()));
  }
  return SymmetricMatrix::Create(Reconstruct(eig, eig.values.cwiseMax(0.0)));
}

absl::StatusOr<SymmetricMatrix> ProjectPsd(const SymmetricMatrix& a) {
  PRIARTA_ASSIGN_OR_RETURN(EigenDecomposition eig, SymEig(a));
  if (eig.values(eig.values.size() - 1) >= 0.0) return a;
  return SymmetricMatrix::Create(Reconstruct(eig, eig.values.cwiseMax(0.0)));
}

absl::StatusOr<SymmetricMatrix> SqrtmPsd(const SymmetricMatrix& a) {
  PRIARTA_ASSIGN_OR_RETURN(EigenDecomposition eig, SymEig(a));
  const double smallest = eig.values(eig.values.size() - 1);
  if (smallest < 0.0 && smallest < NegativeFloor(eig.values)) {
    return MakeError(ErrorCode::kNotPsd,
                     StrCat("square root of a non-PSD matrix: "
                            "eigenvalue ",
                            smallest));
  }
  return SymmetricMatrix::Create(
      Reconstruct(eig, eig.values.cwiseMax(0.0).cwiseSqrt()));
}

absl::StatusOr<GaussianSummary> GaussianSummary::Create(
    Eigen::VectorXd mean, const SymmetricMatrix& covariance, int64_t count) {
  if (mean.size() != covariance.dim()) {
    return MakeError(
        ErrorCode::kShapeMismatch,
        StrCat("mean has length ", mean.size(), " but covariance is ",
               covariance.dim(), "x", covariance.dim()));
  }
  if (count < 2) {
    return MakeError(ErrorCode::kInsufficientSamples,
                     StrCat("summary count must be >= 2, got ", count));
  }
  if (!mean.allFinite()) {
    return MakeError(ErrorCode::kNumericInput, "mean has non-finite entries");
  }
  PRIARTA_ASSIGN_OR_RETURN(SymmetricMatrix clamped, ClampPsd(covariance));
  return GaussianSummary(std::move(mean), std::move(clamped), count);
}

absl::StatusOr<double> Wasserstein2Gaussian(const GaussianSummary& a,
                                            const GaussianSummary& b) {
  if (a.dim() != b.dim()) {
    return MakeError(ErrorCode::kShapeMismatch,
                     StrCat("cannot compare summaries of dimension ", a.dim(),
                            " and ", b.dim()));
  }
  const double mean_term = (a.mean() - b.mean()).squaredNorm();
  double covariance_term = 0.0;
  if (!(a.covariance() == b.covariance())) {
    PRIARTA_ASSIGN_OR_RETURN(SymmetricMatrix root_a, SqrtmPsd(a.covariance()));
    PRIARTA_ASSIGN_OR_RETURN(SymmetricMatrix root_b, SqrtmPsd(b.covariance()));
    const Eigen::MatrixXd cross = root_a.matrix() * root_b.matrix();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(
        cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // cross = X S Y^T; tr(cross * U) is maximal at U = Y X^T.
    const Eigen::MatrixXd polar = svd.matrixV() * svd.matrixU().transpose();
    covariance_term = (root_a.matrix() - root_b.matrix() * polar).squaredNorm();
  }
  const double squared = mean_term + covariance_term;
  if (!std::isfinite(squared)) {
    return MakeError(ErrorCode::kNumericInput,
                     "non-finite intermediate in Wasserstein distance");
  }
  return std::sqrt(std::max(squared, 0.0));
}

absl::StatusOr<double> Wasserstein2GaussianInnerRoot(const GaussianSummary& a,
                                                     const GaussianSummary& b) {
  if (a.dim() != b.dim()) {
    return MakeError(ErrorCode::kShapeMismatch,
                     StrCat("cannot compare summaries of dimension ", a.dim(),
                            " and ", b.dim()));
  }
  PRIARTA_ASSIGN_OR_RETURN(SymmetricMatrix root_a, SqrtmPsd(a.covariance()));
  const Eigen::MatrixXd inner =
      root_a.matrix() * b.covariance().matrix() * root_a.matrix();
  PRIARTA_ASSIGN_OR_RETURN(SymmetricMatrix inner_sym,
                           SymmetricMatrix::Create(Symmetrized(inner)));
  PRIARTA_ASSIGN_OR_RETURN(SymmetricMatrix inner_root, SqrtmPsd(inner_sym));
  const double squared = (a.mean() - b.mean()).squaredNorm() +
                         a.covariance().Trace() + b.covariance().Trace() -
                         2.0 * inner_root.Trace();
  if (!std::isfinite(squared)) {
    return MakeError(ErrorCode::kNumericInput,
                     "non-finite intermediate in Wasserstein distance");
  }
  return std::sqrt(std::max(squared, 0.0));
}

}  // namespace priarta

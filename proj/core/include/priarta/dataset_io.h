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

// On-disk containers for embeddings and raw datasets, plus whole-file I/O.
//
// Embedding file (canonical, bit-exact):
//   PRIARTA-EMB 1
//   <n> <d> <R>
//   n lines of d shortest round-trip decimals, single-space separated
// Every line ends in '\n'; no trailing whitespace.
//
// Raw dataset file:
//   PRIARTA-RAW 1
//   <m> <p> <k>
//   k class probabilities
//   m lines of "<label> <p decimals>"

#ifndef PRIARTA_DATASET_IO_H_
#define PRIARTA_DATASET_IO_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "priarta/encoder.h"
#include "priarta/statistics.h"

namespace priarta {

std::string FormatEmbeddingFile(const Eigen::MatrixXd& vectors,
                                double clip_radius);
absl::StatusOr<EmbeddingSet> ParseEmbeddingFile(std::string_view text);

std::string FormatRawDataset(const RawDataset& data);
absl::StatusOr<RawDataset> ParseRawDataset(std::string_view text);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace priarta

#endif  // PRIARTA_DATASET_IO_H_

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

#include "priarta/dataset_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "priarta/canonical_text.h"
#include "priarta/errors.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

constexpr std::string_view kEmbeddingMagic = "PRIARTA-EMB 1";
constexpr std::string_view kRawMagic = "PRIARTA-RAW 1";

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  absl::StatusOr<std::string_view> Next() {
    if (pos_ >= text_.size()) {
      return Error("unexpected end of file");
    }
    const size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) {
      return Error("line is not newline-terminated");
    }
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_number_;
    return line;
  }

  bool AtEnd() const { return pos_ >= text_.size(); }

  absl::Status Error(std::string_view problem) const {
    return MakeError(ErrorCode::kParseError,
                     StrCat("line ", line_number_ + 1, ": ", problem));
  }

  absl::StatusOr<std::vector<double>> Numbers(std::string_view line,
                                              size_t expected) const {
    std::vector<double> out;
    out.reserve(expected);
    for (absl::string_view token :
         absl::StrSplit(ToAbsl(line), ' ', absl::SkipEmpty())) {
      double value = 0.0;
      const auto result =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (result.ec != std::errc() ||
          result.ptr != token.data() + token.size() || !std::isfinite(value)) {
        return LineError(StrCat("bad number '", token, "'"));
      }
      out.push_back(value);
    }
    if (out.size() != expected) {
      return LineError(
          StrCat("expected ", expected, " values, found ", out.size()));
    }
    return out;
  }

  // Error in the most recently read line.
  absl::Status LineError(std::string_view problem) const {
    return MakeError(ErrorCode::kParseError,
                     StrCat("line ", line_number_, ": ", problem));
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_number_ = 0;
};

absl::StatusOr<int64_t> AsCount(double value, const LineReader& reader,
                                std::string_view what) {
  if (value < 0 || value != std::floor(value) || value > 1e12) {
    return reader.LineError(StrCat("bad ", what, " ", value));
  }
  return static_cast<int64_t>(value);
}

void AppendRow(std::string& out, const Eigen::MatrixXd& m, Eigen::Index i) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j > 0) out += ' ';
    out += ShortestDecimal(m(i, j));
  }
}

}  // namespace

std::string FormatEmbeddingFile(const Eigen::MatrixXd& vectors,
                                double clip_radius) {
  std::string out =
      StrCat(kEmbeddingMagic, "\n", vectors.rows(), " ", vectors.cols(), " ",
             ShortestDecimal(clip_radius), "\n");
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    AppendRow(out, vectors, i);
    out += '\n';
  }
  return out;
}

absl::StatusOr<EmbeddingSet> ParseEmbeddingFile(std::string_view text) {
  LineReader reader(text);
  PRIARTA_ASSIGN_OR_RETURN(std::string_view magic, reader.Next());
  if (magic != kEmbeddingMagic) {
    return reader.LineError(StrCat("expected header '", kEmbeddingMagic, "'"));
  }
  PRIARTA_ASSIGN_OR_RETURN(std::string_view dims_line, reader.Next());
  PRIARTA_ASSIGN_OR_RETURN(std::vector<double> dims,
                           reader.Numbers(dims_line, 3));
  PRIARTA_ASSIGN_OR_RETURN(int64_t n, AsCount(dims[0], reader, "row count"));
  PRIARTA_ASSIGN_OR_RETURN(int64_t d, AsCount(dims[1], reader, "dimension"));
  if (d < 1 || n * d > 10'000'000) {
    return reader.LineError("dimensions out of range");
  }
  Eigen::MatrixXd vectors(n, d);
  for (int64_t i = 0; i < n; ++i) {
    PRIARTA_ASSIGN_OR_RETURN(std::string_view line, reader.Next());
    PRIARTA_ASSIGN_OR_RETURN(std::vector<double> row,
                             reader.Numbers(line, static_cast<size_t>(d)));
    for (int64_t j = 0; j < d; ++j) vectors(i, j) = row[j];
  }
  if (!reader.AtEnd()) {
    return reader.Error("data beyond the declared row count");
  }
  return EmbeddingSet::Create(std::move(vectors), dims[2]);
}

std::string FormatRawDataset(const RawDataset& data) {
  std::string out =
      StrCat(kRawMagic, "\n", data.points.rows(), " ", data.points.cols(), " ",
             data.class_probs.size(), "\n");
  for (Eigen::Index k = 0; k < data.class_probs.size(); ++k) {
    if (k > 0) out += ' ';
    out += ShortestDecimal(data.class_probs(k));
  }
  out += '\n';
  for (Eigen::Index i = 0; i < data.points.rows(); ++i) {
    absl::StrAppend(&out, data.labels[i], " ");
    AppendRow(out, data.points, i);
    out += '\n';
  }
  return out;
}

absl::StatusOr<RawDataset> ParseRawDataset(std::string_view text) {
  LineReader reader(text);
  PRIARTA_ASSIGN_OR_RETURN(std::string_view magic, reader.Next());
  if (magic != kRawMagic) {
    return reader.LineError(StrCat("expected header '", kRawMagic, "'"));
  }
  PRIARTA_ASSIGN_OR_RETURN(std::string_view dims_line, reader.Next());
  PRIARTA_ASSIGN_OR_RETURN(std::vector<double> dims,
                           reader.Numbers(dims_line, 3));
  PRIARTA_ASSIGN_OR_RETURN(int64_t m, AsCount(dims[0], reader, "row count"));
  PRIARTA_ASSIGN_OR_RETURN(int64_t p, AsCount(dims[1], reader, "dimension"));
  PRIARTA_ASSIGN_OR_RETURN(int64_t k, AsCount(dims[2], reader, "class count"));
  if (p < 1 || k < 1 || m * p > 10'000'000) {
    return reader.LineError("dimensions out of range");
  }
  RawDataset data;
  PRIARTA_ASSIGN_OR_RETURN(std::string_view probs_line, reader.Next());
  PRIARTA_ASSIGN_OR_RETURN(std::vector<double> probs,
                           reader.Numbers(probs_line, static_cast<size_t>(k)));
  data.class_probs = Eigen::Map<Eigen::VectorXd>(probs.data(), k);
  data.points.resize(m, p);
  data.labels.resize(m);
  for (int64_t i = 0; i < m; ++i) {
    PRIARTA_ASSIGN_OR_RETURN(std::string_view line, reader.Next());
    PRIARTA_ASSIGN_OR_RETURN(std::vector<double> row,
                             reader.Numbers(line, static_cast<size_t>(p + 1)));
    if (row[0] != std::floor(row[0]) || row[0] < 0 || row[0] >= k) {
      return reader.LineError(StrCat("bad label ", row[0]));
    }
    data.labels[i] = static_cast<int>(row[0]);
    for (int64_t j = 0; j < p; ++j) data.points(i, j) = row[j + 1];
  }
  if (!reader.AtEnd()) {
    return reader.Error("data beyond the declared row count");
  }
  PRIARTA_RETURN_IF_ERROR(data.Validate());
  return data;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorCode::kValidation, StrCat("cannot open ", path));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return MakeError(ErrorCode::kInternal,
                     StrCat("cannot open ", path, " for writing"));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    return MakeError(ErrorCode::kInternal, StrCat("write failed: ", path));
  }
  return absl::OkStatus();
}

}  // namespace priarta

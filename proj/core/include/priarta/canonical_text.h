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

// Canonical structured text used for wire payloads, configuration files and
// reports: JSON with lexicographically sorted object keys, no insignificant
// whitespace, integers printed exactly, and doubles printed as the shortest
// decimal that round-trips (with ".0" appended when that decimal is integral,
// so the value re-parses as a double, including -0.0).

#ifndef PRIARTA_CANONICAL_TEXT_H_
#define PRIARTA_CANONICAL_TEXT_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "priarta/errors.h"

namespace priarta {

using Json = nlohmann::json;

// Non-finite doubles are written as null.
std::string CanonicalDump(const Json& value);

// Shortest round-trip decimal ("3", "0.1", "-0", "1e-05").
std::string ShortestDecimal(double value);
// ShortestDecimal with ".0" appended when the result reads as an integer.
std::string FormatDouble(double value);

// Parse failures carry PARSE_ERROR and the byte offset of the fault.
absl::StatusOr<Json> ParseCanonical(std::string_view text);

Json VectorToJson(const Eigen::VectorXd& v);

// Reads typed fields out of a JSON object and accumulates every problem
// instead of stopping at the first, so validation errors can list all
// offending fields at once. Child readers share the parent's error list.
class JsonFieldReader {
 public:
  JsonFieldReader(const Json& object, std::string path);

  bool Has(std::string_view key) const;
  double Double(std::string_view key);
  int64_t Int(std::string_view key);
  uint64_t Uint(std::string_view key);
  bool Bool(std::string_view key);
  std::string String(std::string_view key);
  std::vector<double> Doubles(std::string_view key);
  Eigen::MatrixXd Matrix(std::string_view key);
  // Returns a null JSON value (and records an error) when absent or not an
  // object/array of the requested kind.
  const Json& Object(std::string_view key);
  const Json& Array(std::string_view key);

  JsonFieldReader Child(const Json& object, std::string_view name);

  void AddError(std::string_view key, std::string_view problem);
  bool ok() const { return errors_->empty(); }
  const std::vector<std::string>& errors() const { return *errors_; }
  std::string Path(std::string_view key) const;

  // OK, or `code` with every recorded problem joined by "; ".
  absl::Status Finish(ErrorCode code) const;

 private:
  JsonFieldReader(const Json& object, std::string path,
                  std::shared_ptr<std::vector<std::string>> errors);
  const Json* Find(std::string_view key, std::string_view expected);

  const Json& object_;
  std::string path_;
  std::shared_ptr<std::vector<std::string>> errors_;
};

}  // namespace priarta

#endif  // PRIARTA_CANONICAL_TEXT_H_

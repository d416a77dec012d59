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

#include "priarta/canonical_text.h"

#include <charconv>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

constexpr int kMaxNestingDepth = 64;

const Json& NullJson() {
  static const Json* const kNull = new Json(nullptr);
  return *kNull;
}

void DumpTo(const Json& value, std::string& out) {
  switch (value.type()) {
    case Json::value_t::null:
    case Json::value_t::discarded:
      out += "null";
      return;
    case Json::value_t::boolean:
      out += value.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(value.get<int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(value.get<uint64_t>());
      return;
    case Json::value_t::number_float:
      out += FormatDouble(value.get<double>());
      return;
    case Json::value_t::string:
      out += value.dump(-1, ' ', false, Json::error_handler_t::replace);
      return;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const Json& item : value) {
        if (!first) out += ',';
        first = false;
        DumpTo(item, out);
      }
      out += ']';
      return;
    }
    case Json::value_t::object: {
      // object_t is an ordered std::map, so iteration is key-sorted.
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump(-1, ' ', false, Json::error_handler_t::replace);
        out += ':';
        DumpTo(item, out);
      }
      out += '}';
      return;
    }
    case Json::value_t::binary:
      out += "null";
      return;
  }
}

// Offset of the first bracket exceeding the nesting limit, or npos.
size_t ExcessiveNestingOffset(std::string_view text) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '[' || c == '{') {
      if (++depth > kMaxNestingDepth) return i;
    } else if (c == ']' || c == '}') {
      --depth;
    }
  }
  return std::string_view::npos;
}

}  // namespace

std::string ShortestDecimal(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string FormatDouble(double value) {
  if (!std::isfinite(value)) return "null";
  std::string out = ShortestDecimal(value);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string CanonicalDump(const Json& value) {
  std::string out;
  DumpTo(value, out);
  return out;
}

absl::StatusOr<Json> ParseCanonical(std::string_view text) {
  if (const size_t offset = ExcessiveNestingOffset(text);
      offset != std::string_view::npos) {
    return MakeError(
        ErrorCode::kParseError,
        StrCat("nesting deeper than ", kMaxNestingDepth, " at byte ", offset));
  }
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    return MakeError(ErrorCode::kParseError,
                     StrCat("byte ", e.byte, ": ", e.what()));
  } catch (const Json::exception& e) {
    // Out-of-range numbers and the like; no offset available.
    return MakeError(ErrorCode::kParseError, e.what());
  }
}

Json VectorToJson(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

JsonFieldReader::JsonFieldReader(const Json& object, std::string path)
    : JsonFieldReader(object, std::move(path),
                      std::make_shared<std::vector<std::string>>()) {}

JsonFieldReader::JsonFieldReader(
    const Json& object, std::string path,
    std::shared_ptr<std::vector<std::string>> errors)
    : object_(object), path_(std::move(path)), errors_(std::move(errors)) {
  // A null child means the parent already reported the missing field.
  if (!object_.is_object() && !(object_.is_null() && !path_.empty())) {
    errors_->push_back(
        StrCat(path_.empty() ? "<root>" : path_, ": expected an object"));
  }
}

std::string JsonFieldReader::Path(std::string_view key) const {
  return path_.empty() ? std::string(key) : StrCat(path_, ".", key);
}

void JsonFieldReader::AddError(std::string_view key, std::string_view problem) {
  errors_->push_back(StrCat(Path(key), ": ", problem));
}

bool JsonFieldReader::Has(std::string_view key) const {
  return object_.is_object() && object_.find(std::string(key)) != object_.end();
}

const Json* JsonFieldReader::Find(std::string_view key,
                                  std::string_view expected) {
  if (!object_.is_object()) return nullptr;
  auto it = object_.find(std::string(key));
  if (it == object_.end()) {
    AddError(key, StrCat("missing required ", expected));
    return nullptr;
  }
  return &*it;
}

double JsonFieldReader::Double(std::string_view key) {
  const Json* v = Find(key, "number");
  if (v == nullptr) return 0.0;
  if (!v->is_number()) {
    AddError(key, "expected a number");
    return 0.0;
  }
  return v->get<double>();
}

int64_t JsonFieldReader::Int(std::string_view key) {
  const Json* v = Find(key, "integer");
  if (v == nullptr) return 0;
  if (v->is_number_unsigned()) {
    const uint64_t u = v->get<uint64_t>();
    if (u > static_cast<uint64_t>(INT64_MAX)) {
      AddError(key, "integer out of range");
      return 0;
    }
    return static_cast<int64_t>(u);
  }
  if (!v->is_number_integer()) {
    AddError(key, "expected an integer");
    return 0;
  }
  return v->get<int64_t>();
}

uint64_t JsonFieldReader::Uint(std::string_view key) {
  const Json* v = Find(key, "unsigned integer");
  if (v == nullptr) return 0;
  if (!v->is_number_unsigned()) {
    AddError(key, "expected a non-negative integer");
    return 0;
  }
  return v->get<uint64_t>();
}

bool JsonFieldReader::Bool(std::string_view key) {
  const Json* v = Find(key, "boolean");
  if (v == nullptr) return false;
  if (!v->is_boolean()) {
    AddError(key, "expected a boolean");
    return false;
  }
  return v->get<bool>();
}

std::string JsonFieldReader::String(std::string_view key) {
  const Json* v = Find(key, "string");
  if (v == nullptr) return {};
  if (!v->is_string()) {
    AddError(key, "expected a string");
    return {};
  }
  return v->get<std::string>();
}

std::vector<double> JsonFieldReader::Doubles(std::string_view key) {
  const Json* v = Find(key, "number array");
  if (v == nullptr) return {};
  if (!v->is_array()) {
    AddError(key, "expected an array of numbers");
    return {};
  }
  std::vector<double> out;
  out.reserve(v->size());
  for (const Json& item : *v) {
    if (!item.is_number()) {
      AddError(key, "expected an array of numbers");
      return {};
    }
    out.push_back(item.get<double>());
  }
  return out;
}

Eigen::MatrixXd JsonFieldReader::Matrix(std::string_view key) {
  const Json* v = Find(key, "matrix");
  if (v == nullptr) return {};
  if (!v->is_array() || v->empty()) {
    AddError(key, "expected a non-empty array of rows");
    return {};
  }
  const size_t cols = (*v)[0].is_array() ? (*v)[0].size() : 0;
  Eigen::MatrixXd out(v->size(), cols);
  for (size_t i = 0; i < v->size(); ++i) {
    const Json& row = (*v)[i];
    if (!row.is_array() || row.size() != cols || cols == 0) {
      AddError(key, "rows must be equal-length non-empty number arrays");
      return {};
    }
    for (size_t j = 0; j < cols; ++j) {
      if (!row[j].is_number()) {
        AddError(key, "matrix entries must be numbers");
        return {};
      }
      out(i, j) = row[j].get<double>();
    }
  }
  return out;
}

const Json& JsonFieldReader::Object(std::string_view key) {
  const Json* v = Find(key, "object");
  if (v == nullptr) return NullJson();
  if (!v->is_object()) {
    AddError(key, "expected an object");
    return NullJson();
  }
  return *v;
}

const Json& JsonFieldReader::Array(std::string_view key) {
  const Json* v = Find(key, "array");
  if (v == nullptr) return NullJson();
  if (!v->is_array()) {
    AddError(key, "expected an array");
    return NullJson();
  }
  return *v;
}

JsonFieldReader JsonFieldReader::Child(const Json& object,
                                       std::string_view name) {
  return JsonFieldReader(object, Path(name), errors_);
}

absl::Status JsonFieldReader::Finish(ErrorCode code) const {
  if (errors_->empty()) return absl::OkStatus();
  return MakeError(code, absl::StrJoin(*errors_, "; "));
}

}  // namespace priarta

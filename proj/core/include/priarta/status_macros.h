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

#ifndef PRIARTA_STATUS_MACROS_H_
#define PRIARTA_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define PRIARTA_STATUS_CONCAT_INNER_(a, b) a##b
#define PRIARTA_STATUS_CONCAT_(a, b) PRIARTA_STATUS_CONCAT_INNER_(a, b)

#define PRIARTA_RETURN_IF_ERROR(expr)            \
  do {                                           \
    const absl::Status _priarta_status = (expr); \
    if (!_priarta_status.ok()) {                 \
      return _priarta_status;                    \
    }                                            \
  } while (0)

#define PRIARTA_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                   \
  if (!statusor.ok()) {                                      \
    return statusor.status();                                \
  }                                                          \
  lhs = std::move(statusor).value()

#define PRIARTA_ASSIGN_OR_RETURN(lhs, rexpr) \
  PRIARTA_ASSIGN_OR_RETURN_IMPL_(            \
      PRIARTA_STATUS_CONCAT_(_priarta_statusor_, __LINE__), lhs, rexpr)

#endif  // PRIARTA_STATUS_MACROS_H_

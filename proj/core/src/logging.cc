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

#include "priarta/logging.h"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string_view>

namespace priarta {
namespace {

int LevelFromEnvironment() {
  const char* env = std::getenv("PRIARTA_LOG");
  if (env == nullptr) return static_cast<int>(LogLevel::kWarning);
  const std::string_view value(env);
  if (value == "error") return static_cast<int>(LogLevel::kError);
  if (value == "info") return static_cast<int>(LogLevel::kInfo);
  if (value == "debug") return static_cast<int>(LogLevel::kDebug);
  return static_cast<int>(LogLevel::kWarning);
}

std::atomic<int>& Threshold() {
  static std::atomic<int> threshold{LevelFromEnvironment()};
  return threshold;
}

constexpr std::string_view kTags[] = {"E", "W", "I", "D"};

}  // namespace

bool LogEnabled(LogLevel level) {
  return static_cast<int>(level) <= Threshold().load(std::memory_order_relaxed);
}

void SetLogLevel(LogLevel level) {
  Threshold().store(static_cast<int>(level), std::memory_order_relaxed);
}

LogMessage::~LogMessage() {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[priarta " << kTags[static_cast<int>(level_)] << "] "
            << stream_.str() << '\n';
}

}  // namespace priarta

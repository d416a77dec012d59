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

// Minimal leveled logging to stderr. The threshold comes from the PRIARTA_LOG
// environment variable (error, warning, info, debug; default warning).

#ifndef PRIARTA_LOGGING_H_
#define PRIARTA_LOGGING_H_

#include <sstream>

namespace priarta {

enum class LogLevel { kError = 0, kWarning = 1, kInfo = 2, kDebug = 3 };

bool LogEnabled(LogLevel level);
void SetLogLevel(LogLevel level);

class LogMessage {
 public:
  explicit LogMessage(LogLevel level) : level_(level) {}
  LogMessage(const LogMessage&) = delete;
  LogMessage& operator=(const LogMessage&) = delete;
  ~LogMessage();

  template <typename T>
  LogMessage& operator<<(const T& value) {
    stream_ << value;
    return *this;
  }

 private:
  LogLevel level_;
  std::ostringstream stream_;
};

}  // namespace priarta

#define PRIARTA_LOG(severity)                                  \
  if (!::priarta::LogEnabled(::priarta::LogLevel::severity)) { \
  } else                                                       \
    ::priarta::LogMessage(::priarta::LogLevel::severity)

#endif  // PRIARTA_LOGGING_H_

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

// The priarta command-line tool. Every subcommand is a plain function so it
// can be driven from tests; RunCli only parses flags and maps statuses to
// exit codes.

#ifndef PRIARTA_TOOLS_CLI_H_
#define PRIARTA_TOOLS_CLI_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "priarta/seller.h"
#include "priarta/valuation.h"

namespace priarta::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitAllSellersFailed = 3;

// Input problems (bad flags, configs, files, shapes) map to kExitValidation;
// everything else to kExitRuntime.
int ExitCodeFor(const absl::Status& status);

// Loads a raw dataset or an embedding file, chosen by its header line.
absl::StatusOr<SellerData> LoadData(const std::string& path);

struct ScenarioOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<uint64_t> seed;  // overrides master_seed
};

// Writes buyer.raw, <node_id>.raw per seller, encoder.json and
// scenario.resolved.json into out_dir.
absl::Status RunScenarioCommand(const ScenarioOptions& options,
                                std::ostream& out);

struct EncodeOptions {
  std::string spec_path;
  std::string input_path;
  std::string output_path;
  double clip_radius = 20.0;  // recorded in the file header
};

absl::Status RunEncodeCommand(const EncodeOptions& options, std::ostream& out);

struct ServeOptions {
  std::string input_path;
  std::string listen = "127.0.0.1:0";
  std::string node_id;    // default: input file stem
  std::string spec_path;  // optional; checked against the data at startup
};

// Serves until `stop` becomes true. on_listening receives the bound port.
absl::Status RunServeCommand(const ServeOptions& options,
                             const std::atomic<bool>& stop, std::ostream& out,
                             const std::function<void(int)>& on_listening = {});

struct ValueOptions {
  std::string input_path;  // buyer data
  // Network mode: comma-separated [node_id=]host:port entries.
  // Offline mode: directory of .emb files, one seller per file.
  std::string sellers;
  std::string output_path;
  std::string spec_path;  // required for raw buyer data
  double epsilon = 0.8;
  double delta = 1e-5;
  double clip_radius = 20.0;
  int64_t subset_size = 4000;
  std::optional<uint64_t> seed;  // unset: secure mode
  Objective objective = Objective::kDiversify;
  bool debias = false;
  bool offline = false;
  bool concurrent = false;
  bool buyer_noise = false;
};

// Runs the valuation and writes the report, including when every seller
// failed (the caller turns that into kExitAllSellersFailed).
absl::StatusOr<ValuationReport> RunValueCommand(const ValueOptions& options,
                                                std::ostream& out);

// "[id=]host:port,..." -> (node_id, address); the id defaults to the address.
absl::StatusOr<std::vector<std::pair<std::string, std::string>>>
ParseSellerList(std::string_view list);

enum class ReportFormat { kTable, kCsv };

struct ReportOptions {
  std::string input_path;
  ReportFormat format = ReportFormat::kTable;
};

std::string FormatReportTable(const ValuationReport& report);
// Header plus one row per seller; raw_w2 and normalized in shortest
// round-trip form so the values re-parse exactly.
std::string FormatReportCsv(const ValuationReport& report);
// RFC 4180 field quoting.
std::string CsvField(std::string_view field);
// Footnote printed when min-max normalization was degenerate.
std::string DegenerateFootnote();

absl::Status RunReportCommand(const ReportOptions& options, std::ostream& out,
                              std::ostream& err);

struct RobustnessOptions {
  std::string config_path;
  std::string input_path;   // report to extend
  std::string output_path;  // default: input_path
  std::optional<uint64_t> seed;
  bool independent_seeds = false;
};

absl::Status RunRobustnessCommand(const RobustnessOptions& options,
                                  std::ostream& out);

// args excludes the program name. `stop` ends `serve`; without it serve
// runs until the process is killed.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const std::atomic<bool>* stop = nullptr);

}  // namespace priarta::cli

#endif  // PRIARTA_TOOLS_CLI_H_

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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "absl/strings/str_split.h"
#include "priarta/canonical_text.h"
#include "priarta/dataset_io.h"
#include "priarta/errors.h"
#include "priarta/logging.h"
#include "priarta/orchestrator.h"
#include "priarta/scenario.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"
#include "priarta/transport.h"

namespace priarta::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kEmbeddingExtension = ".emb";

absl::Status ValidationError(std::string_view message) {
  return MakeError(ErrorCode::kValidation, message);
}

absl::StatusOr<EncoderSpec> LoadSpec(const std::string& path) {
  PRIARTA_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  auto json = ParseCanonical(text);
  if (!json.ok()) {
    return ValidationError(StrCat(path, ": ", ToStd(json.status().message())));
  }
  auto spec = EncoderSpec::FromJson(*json);
  if (!spec.ok()) {
    return ValidationError(StrCat(path, ": ", ToStd(spec.status().message())));
  }
  return spec;
}

bool SafeFileStem(std::string_view id) {
  return !id.empty() && id != "." && id != ".." &&
         std::all_of(id.begin(), id.end(), [](char c) {
           return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                  c == '_' || c == '.';
         });
}

absl::Status WriteInto(const fs::path& dir, const std::string& name,
                       std::string_view contents, std::ostream& out) {
  const fs::path path = dir / name;
  PRIARTA_RETURN_IF_ERROR(WriteFile(path.string(), contents));
  out << "wrote " << path.string() << "\n";
  return absl::OkStatus();
}

std::string Fixed(double value, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << value;
  return s.str();
}

std::string Scientific(double value) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << value;
  return s.str();
}

// Left-aligned columns separated by two spaces.
std::string RenderTable(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (size_t j = 0; j < row.size(); ++j) {
      widths[j] = std::max(widths[j], row[j].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (size_t j = 0; j < row.size(); ++j) {
      line += row[j];
      if (j + 1 < row.size())
        line += std::string(widths[j] - row[j].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

absl::StatusOr<std::vector<SellerEndpoint>> OfflineEndpoints(
    const ValueOptions& options,
    std::vector<std::unique_ptr<SellerNode>>& nodes) {
  const fs::path dir(options.sellers);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    return ValidationError(
        StrCat("--offline needs --sellers to be a directory, got '",
               options.sellers, "'"));
  }
  std::vector<fs::path> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file() ||
        entry.path().extension() != kEmbeddingExtension) {
      continue;
    }
    if (fs::equivalent(entry.path(), options.input_path, ec)) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    return ValidationError(StrCat("no *", kEmbeddingExtension,
                                  " seller files in ", options.sellers));
  }
  std::vector<SellerEndpoint> endpoints;
  for (const fs::path& file : files) {
    PRIARTA_ASSIGN_OR_RETURN(std::string text, ReadFile(file.string()));
    auto set = ParseEmbeddingFile(text);
    if (!set.ok()) {
      return ValidationError(
          StrCat(file.string(), ": ", ToStd(set.status().message())));
    }
    nodes.push_back(
        std::make_unique<SellerNode>(file.stem().string(), *std::move(set)));
    endpoints.push_back(
        SellerEndpoint{nodes.back()->node_id(), nodes.back().get()});
  }
  return endpoints;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (GetErrorCode(status)) {
    case ErrorCode::kOk:
      return kExitOk;
    case ErrorCode::kValidation:
    case ErrorCode::kInvalidParameter:
    case ErrorCode::kParseError:
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kSpecMismatch:
    case ErrorCode::kNumericInput:
    case ErrorCode::kEmptyInput:
    case ErrorCode::kInsufficientSamples:
      return kExitValidation;
    default:
      return kExitRuntime;
  }
}

absl::StatusOr<SellerData> LoadData(const std::string& path) {
  PRIARTA_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  const auto with_path = [&](const absl::Status& s) {
    return MakeError(GetErrorCode(s), StrCat(path, ": ", ToStd(s.message())));
  };
  if (text.rfind("PRIARTA-EMB", 0) == 0) {
    auto set = ParseEmbeddingFile(text);
    if (!set.ok()) return with_path(set.status());
    return SellerData(*std::move(set));
  }
  if (text.rfind("PRIARTA-RAW", 0) == 0) {
    auto raw = ParseRawDataset(text);
    if (!raw.ok()) return with_path(raw.status());
    return SellerData(*std::move(raw));
  }
  return ValidationError(StrCat(
      path, ": not an embedding (PRIARTA-EMB) or raw (PRIARTA-RAW) file"));
}

absl::Status RunScenarioCommand(const ScenarioOptions& options,
                                std::ostream& out) {
  PRIARTA_ASSIGN_OR_RETURN(std::string text, ReadFile(options.config_path));
  PRIARTA_ASSIGN_OR_RETURN(ScenarioConfig config, ScenarioConfig::Parse(text));
  if (options.seed.has_value()) config.master_seed = *options.seed;
  for (const ScenarioSellerConfig& s : config.sellers) {
    if (!SafeFileStem(s.node_id)) {
      return ValidationError(StrCat("sellers: node_id '", s.node_id,
                                    "' must be usable as a file name"));
    }
  }
  PRIARTA_ASSIGN_OR_RETURN(ScenarioData data, BuildScenario(config));
  const fs::path dir(options.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return MakeError(
        ErrorCode::kInternal,
        StrCat("cannot create ", options.out_dir, ": ", ec.message()));
  }
  PRIARTA_RETURN_IF_ERROR(WriteInto(dir, StrCat(kBuyerId, ".raw"),
                                    FormatRawDataset(data.buyer), out));
  for (const ScenarioSellerData& s : data.sellers) {
    PRIARTA_RETURN_IF_ERROR(
        WriteInto(dir, s.node_id + ".raw", FormatRawDataset(s.data), out));
  }
  PRIARTA_RETURN_IF_ERROR(
      WriteInto(dir, "encoder.json",
                CanonicalDump(data.resolved.encoder.ToJson()) + "\n", out));
  return WriteInto(dir, "scenario.resolved.json",
                   CanonicalDump(data.resolved.ToJson()) + "\n", out);
}

absl::Status RunEncodeCommand(const EncodeOptions& options, std::ostream& out) {
  PRIARTA_ASSIGN_OR_RETURN(EncoderSpec spec, LoadSpec(options.spec_path));
  PRIARTA_ASSIGN_OR_RETURN(SellerData data, LoadData(options.input_path));
  const auto* raw = std::get_if<RawDataset>(&data);
  if (raw == nullptr) {
    return ValidationError(
        StrCat(options.input_path, ": encode needs a raw dataset"));
  }
  if (!(options.clip_radius > 0.0)) {
    return ValidationError("--clip-radius must be positive");
  }
  PRIARTA_ASSIGN_OR_RETURN(Eigen::MatrixXd latent, Encode(spec, *raw));
  PRIARTA_RETURN_IF_ERROR(WriteFile(
      options.output_path, FormatEmbeddingFile(latent, options.clip_radius)));
  out << "wrote " << latent.rows() << " x " << latent.cols()
      << " embeddings to " << options.output_path << "\n";
  return absl::OkStatus();
}

absl::Status RunServeCommand(const ServeOptions& options,
                             const std::atomic<bool>& stop, std::ostream& out,
                             const std::function<void(int)>& on_listening) {
  PRIARTA_ASSIGN_OR_RETURN(SellerData data, LoadData(options.input_path));
  if (!options.spec_path.empty()) {
    PRIARTA_ASSIGN_OR_RETURN(EncoderSpec spec, LoadSpec(options.spec_path));
    PRIARTA_RETURN_IF_ERROR(CheckSpecCompatible(data, spec));
  }
  const std::string node_id = options.node_id.empty()
                                  ? fs::path(options.input_path).stem().string()
                                  : options.node_id;
  // Session outcomes are the point of a serving process: log them unless the
  // user chose a level explicitly.
  if (std::getenv("PRIARTA_LOG") == nullptr) SetLogLevel(LogLevel::kInfo);
  SellerNode node(node_id, std::move(data));
  PRIARTA_ASSIGN_OR_RETURN(std::unique_ptr<SellerServer> server,
                           SellerServer::Start(node, options.listen));
  PRIARTA_ASSIGN_OR_RETURN(HostPort hp, ParseHostPort(options.listen));
  out << "seller " << node_id << " listening on " << hp.host << ":"
      << server->port() << std::endl;
  if (on_listening) on_listening(server->port());
  while (!stop.load()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  server->Stop();
  out << "seller " << node_id << " stopped after " << node.sessions_served()
      << " sessions" << std::endl;
  return absl::OkStatus();
}

absl::StatusOr<std::vector<std::pair<std::string, std::string>>>
ParseSellerList(std::string_view list) {
  std::vector<std::pair<std::string, std::string>> out;
  for (absl::string_view item : absl::StrSplit(ToAbsl(list), ',')) {
    const std::string_view entry = ToStd(item);
    if (entry.empty()) continue;
    const size_t eq = entry.find('=');
    std::string id(eq == std::string_view::npos ? entry : entry.substr(0, eq));
    std::string address(eq == std::string_view::npos ? entry
                                                     : entry.substr(eq + 1));
    if (id.empty()) {
      return ValidationError(
          StrCat("--sellers: empty node id in '", entry, "'"));
    }
    if (auto hp = ParseHostPort(address); !hp.ok()) {
      return ValidationError(
          StrCat("--sellers: ", ToStd(hp.status().message())));
    }
    for (const auto& [seen, unused] : out) {
      if (seen == id) {
        return ValidationError(
            StrCat("--sellers: duplicate node id '", id, "'"));
      }
    }
    out.emplace_back(std::move(id), std::move(address));
  }
  if (out.empty()) return ValidationError("--sellers: no sellers given");
  return out;
}

absl::StatusOr<ValuationReport> RunValueCommand(const ValueOptions& options,
                                                std::ostream& out) {
  auto budget = PrivacyBudget::Create(options.epsilon, options.delta,
                                      options.clip_radius, options.subset_size);
  if (!budget.ok()) return ValidationError(ToStd(budget.status().message()));
  PRIARTA_ASSIGN_OR_RETURN(SellerData buyer, LoadData(options.input_path));
  EncoderSpec spec;
  if (!options.spec_path.empty()) {
    PRIARTA_ASSIGN_OR_RETURN(spec, LoadSpec(options.spec_path));
  } else if (const auto* set = std::get_if<EmbeddingSet>(&buyer)) {
    spec.kind = EncoderSpec::Kind::kExternal;
    spec.latent_dim = set->dim();
  } else {
    return ValidationError("--spec is required when the buyer data is raw");
  }
  if (const auto* set = std::get_if<EmbeddingSet>(&buyer);
      set != nullptr && set->dim() != spec.latent_dim) {
    return ValidationError(StrCat("buyer embeddings have ", set->dim(),
                                  " dims, encoder declares ", spec.latent_dim));
  }

  std::vector<std::unique_ptr<SellerNode>> nodes;
  std::vector<SellerEndpoint> endpoints;
  if (options.offline) {
    PRIARTA_ASSIGN_OR_RETURN(endpoints, OfflineEndpoints(options, nodes));
  } else {
    PRIARTA_ASSIGN_OR_RETURN(auto list, ParseSellerList(options.sellers));
    for (auto& [id, address] : list) {
      endpoints.push_back(SellerEndpoint{id, address});
    }
  }

  ValuationParams params{*budget, spec, options.seed};
  params.debias = options.debias;
  params.concurrent = options.concurrent;
  params.buyer_noise = options.buyer_noise;
  PRIARTA_ASSIGN_OR_RETURN(
      ValuationReport report,
      RunValuation(buyer, endpoints, params, options.objective));
  PRIARTA_RETURN_IF_ERROR(WriteFile(options.output_path, report.Serialize()));
  out << "valued " << report.entries.size() << " sellers ("
      << report.num_succeeded() << " succeeded); report written to "
      << options.output_path << "\n";
  for (const ValuationEntry& e : report.entries) {
    if (e.failed)
      out << "  " << e.node_id << " failed: " << e.failure_reason << "\n";
  }
  return report;
}

std::string DegenerateFootnote() {
  return "note: min-max normalization is degenerate (all successful sellers "
         "have the same raw score); normalized scores are set to 0";
}

std::string FormatReportTable(const ValuationReport& report) {
  std::vector<std::vector<std::string>> rows{
      {"node_id", "raw_w2", "normalized", "rank"}};
  std::vector<std::string> failures;
  for (const ValuationEntry& e : report.entries) {
    if (e.failed) {
      rows.push_back({e.node_id, "-", "-", "failed"});
      failures.push_back(StrCat(e.node_id, ": ", e.failure_reason));
      continue;
    }
    const auto it =
        std::find(report.ranking.begin(), report.ranking.end(), e.node_id);
    rows.push_back({e.node_id, Fixed(e.raw_w2), Fixed(e.normalized),
                    std::to_string(it - report.ranking.begin() + 1)});
  }
  std::string out =
      StrCat("objective: ", ObjectiveName(report.objective), "\n");
  out += RenderTable(rows);
  for (const std::string& f : failures) out += "failed " + f + "\n";
  if (report.normalization_degenerate) out += DegenerateFootnote() + "\n";
  if (report.robustness.has_value()) {
    std::vector<std::vector<std::string>> robust{
        {"node_id", "source", "baseline_w2", "augmented_w2", "deviation"}};
    for (const RobustnessEntry& r : *report.robustness) {
      robust.push_back({r.node_id, r.source_id, Fixed(r.baseline_w2),
                        Fixed(r.augmented_w2), Scientific(r.deviation)});
    }
    out += "\nrobustness (deviation = |augmented_w2 - baseline_w2|)\n";
    out += RenderTable(robust);
  }
  return out;
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string FormatReportCsv(const ValuationReport& report) {
  std::string out = "node_id,raw_w2,normalized,rank,failed,failure_reason\r\n";
  for (const ValuationEntry& e : report.entries) {
    std::string raw, normalized, rank;
    if (!e.failed) {
      raw = ShortestDecimal(e.raw_w2);
      normalized = ShortestDecimal(e.normalized);
      const auto it =
          std::find(report.ranking.begin(), report.ranking.end(), e.node_id);
      rank = std::to_string(it - report.ranking.begin() + 1);
    }
    out += StrCat(CsvField(e.node_id), ",", raw, ",", normalized, ",", rank,
                  ",", e.failed ? "true" : "false", ",",
                  CsvField(e.failure_reason), "\r\n");
  }
  return out;
}

absl::Status RunReportCommand(const ReportOptions& options, std::ostream& out,
                              std::ostream& err) {
  PRIARTA_ASSIGN_OR_RETURN(std::string text, ReadFile(options.input_path));
  auto report = ValuationReport::Parse(text);
  if (!report.ok()) {
    return MakeError(
        ErrorCode::kParseError,
        StrCat(options.input_path, ": ", ToStd(report.status().message())));
  }
  if (options.format == ReportFormat::kTable) {
    out << FormatReportTable(*report);
  } else {
    out << FormatReportCsv(*report);
    // Keep stdout machine-readable; the footnote goes to stderr.
    if (report->normalization_degenerate) err << DegenerateFootnote() << "\n";
  }
  return absl::OkStatus();
}

absl::Status RunRobustnessCommand(const RobustnessOptions& options,
                                  std::ostream& out) {
  PRIARTA_ASSIGN_OR_RETURN(std::string text, ReadFile(options.config_path));
  PRIARTA_ASSIGN_OR_RETURN(ScenarioConfig config, ScenarioConfig::Parse(text));
  if (options.seed.has_value()) config.master_seed = *options.seed;
  const bool any_copy = std::any_of(
      config.sellers.begin(), config.sellers.end(), [](const auto& s) {
        return s.kind == ScenarioSellerConfig::Kind::kAugmentedCopy;
      });
  if (!any_copy) {
    out << "no augmented_copy sellers in " << options.config_path
        << "; report left unchanged\n";
    return absl::OkStatus();
  }
  PRIARTA_ASSIGN_OR_RETURN(std::string report_text,
                           ReadFile(options.input_path));
  auto report = ValuationReport::Parse(report_text);
  if (!report.ok()) {
    return MakeError(
        ErrorCode::kParseError,
        StrCat(options.input_path, ": ", ToStd(report.status().message())));
  }
  PRIARTA_ASSIGN_OR_RETURN(ScenarioData data, BuildScenario(config));
  PRIARTA_ASSIGN_OR_RETURN(
      std::vector<RobustnessEntry> rows,
      ComputeScenarioRobustness(data, !options.independent_seeds));
  report->robustness = std::move(rows);
  const std::string& target =
      options.output_path.empty() ? options.input_path : options.output_path;
  PRIARTA_RETURN_IF_ERROR(WriteFile(target, report->Serialize()));
  out << "appended robustness for " << report->robustness->size()
      << " augmented sellers to " << target << "\n";
  return absl::OkStatus();
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const std::atomic<bool>* stop) {
  CLI::App app{"Private data valuation over Gaussian summaries", "priarta"};
  app.require_subcommand(1);

  ScenarioOptions scenario;
  uint64_t seed = 0;
  CLI::App* scenario_cmd =
      app.add_subcommand("scenario", "Generate buyer and seller datasets");
  scenario_cmd->add_option("--config", scenario.config_path, "Scenario config")
      ->required();
  scenario_cmd->add_option("--out-dir", scenario.out_dir, "Output directory")
      ->required();
  CLI::Option* scenario_seed =
      scenario_cmd->add_option("--seed", seed, "Override master_seed");

  EncodeOptions encode;
  CLI::App* encode_cmd = app.add_subcommand("encode", "Embed a raw dataset");
  encode_cmd->add_option("--spec", encode.spec_path, "Encoder spec")
      ->required();
  encode_cmd->add_option("--input", encode.input_path, "Raw dataset")
      ->required();
  encode_cmd->add_option("--output", encode.output_path, "Embedding file")
      ->required();
  encode_cmd
      ->add_option("--clip-radius", encode.clip_radius,
                   "Clip radius recorded in the file header")
      ->capture_default_str();

  ServeOptions serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Run a seller node");
  serve_cmd->add_option("--input", serve.input_path, "Raw or embedding file")
      ->required();
  serve_cmd->add_option("--listen", serve.listen, "host:port")
      ->capture_default_str();
  serve_cmd->add_option("--node-id", serve.node_id,
                        "Seller id (default: input file stem)");
  serve_cmd->add_option("--spec", serve.spec_path,
                        "Encoder spec to check the data against");

  ValueOptions value;
  std::string objective = "diversify";
  CLI::App* value_cmd = app.add_subcommand("value", "Value sellers as a buyer");
  value_cmd->add_option("--input", value.input_path, "Buyer data")->required();
  value_cmd
      ->add_option("--sellers", value.sellers,
                   "[id=]host:port list, or a directory with --offline")
      ->required();
  value_cmd->add_option("--output", value.output_path, "Report file")
      ->required();
  value_cmd->add_option("--spec", value.spec_path, "Encoder spec");
  value_cmd->add_option("--epsilon", value.epsilon)->capture_default_str();
  value_cmd->add_option("--delta", value.delta)->capture_default_str();
  value_cmd->add_option("--clip-radius", value.clip_radius)
      ->capture_default_str();
  value_cmd->add_option("--subset-size", value.subset_size)
      ->capture_default_str();
  CLI::Option* value_seed = value_cmd->add_option(
      "--seed", seed, "Master seed (replayable; voids the privacy guarantee)");
  value_cmd->add_option("--objective", objective)
      ->check(CLI::IsMember({"diversify", "enrich"}))
      ->capture_default_str();
  value_cmd->add_flag("--debias", value.debias,
                      "Subtract sigma^2 I from seller covariances");
  value_cmd->add_flag("--offline", value.offline,
                      "Read seller embedding files instead of connecting");
  value_cmd->add_flag("--concurrent", value.concurrent,
                      "Query sellers in parallel");
  value_cmd->add_flag("--buyer-noise", value.buyer_noise,
                      "Noise the buyer summary like the sellers'");

  ReportOptions report;
  std::string format = "table";
  CLI::App* report_cmd = app.add_subcommand("report", "Render a report");
  report_cmd->add_option("--input", report.input_path, "Report file")
      ->required();
  report_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();

  RobustnessOptions robustness;
  CLI::App* robustness_cmd = app.add_subcommand(
      "robustness", "Append augmentation-robustness deviations to a report");
  robustness_cmd
      ->add_option("--config", robustness.config_path, "Scenario config")
      ->required();
  robustness_cmd->add_option("--input", robustness.input_path, "Report file")
      ->required();
  robustness_cmd->add_option("--output", robustness.output_path,
                             "Where to write (default: --input)");
  CLI::Option* robustness_seed =
      robustness_cmd->add_option("--seed", seed, "Override master_seed");
  robustness_cmd->add_flag("--independent-seeds", robustness.independent_seeds,
                           "Give each copy its own sampling and noise stream");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  absl::Status status;
  if (scenario_cmd->parsed()) {
    if (scenario_seed->count() > 0) scenario.seed = seed;
    status = RunScenarioCommand(scenario, out);
  } else if (encode_cmd->parsed()) {
    status = RunEncodeCommand(encode, out);
  } else if (serve_cmd->parsed()) {
    static std::atomic<bool> never{false};
    status = RunServeCommand(serve, stop != nullptr ? *stop : never, out);
  } else if (value_cmd->parsed()) {
    if (value_seed->count() > 0) value.seed = seed;
    value.objective = *ParseObjective(objective);
    auto result = RunValueCommand(value, out);
    if (result.ok() && result->num_succeeded() == 0) {
      err << "error: every seller failed\n";
      return kExitAllSellersFailed;
    }
    status = result.status();
  } else if (report_cmd->parsed()) {
    report.format = format == "csv" ? ReportFormat::kCsv : ReportFormat::kTable;
    status = RunReportCommand(report, out, err);
  } else if (robustness_cmd->parsed()) {
    if (robustness_seed->count() > 0) robustness.seed = seed;
    status = RunRobustnessCommand(robustness, out);
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return ExitCodeFor(status);
  }
  return kExitOk;
}

}  // namespace priarta::cli

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

#include <filesystem>
#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "absl/strings/str_split.h"
#include "gtest/gtest.h"
#include "priarta/dataset_io.h"
#include "priarta/scenario.h"
#include "priarta/strings.h"
#include "test_util.h"

namespace priarta::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& path) {
  auto text = ReadFile(path.string());
  EXPECT_TRUE(text.ok()) << text.status();
  return text.ok() ? *text : "";
}

void Spit(const fs::path& path, std::string_view text) {
  ASSERT_OK(WriteFile(path.string(), text));
}

// One default scenario, generated and encoded once for the whole suite.
class CliScenarioTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = new fs::path(fs::path(::testing::TempDir()) / "priarta_cli_test");
    fs::remove_all(*root_);
    fs::create_directories(*root_);
    Spit(Config(), CanonicalDump(DefaultScenarioConfig().ToJson()));
    const CliRun run = Cli({"scenario", "--config", Config().string(),
                            "--out-dir", Data().string()});
    ASSERT_EQ(run.code, 0) << run.err;
    fs::create_directories(Embeddings());
    for (const fs::directory_entry& e : fs::directory_iterator(Data())) {
      if (e.path().extension() != ".raw") continue;
      const CliRun enc =
          Cli({"encode", "--spec", (Data() / "encoder.json").string(),
               "--input", e.path().string(), "--output",
               (Embeddings() / e.path().stem()).string() + ".emb"});
      ASSERT_EQ(enc.code, 0) << enc.err;
    }
    // The buyer's file lives apart from the seller directory.
    fs::rename(Embeddings() / "buyer.emb", *root_ / "buyer.emb");
  }
  static void TearDownTestSuite() {
    fs::remove_all(*root_);
    delete root_;
  }

  static fs::path Config() { return *root_ / "scenario.json"; }
  static fs::path Data() { return *root_ / "data"; }
  static fs::path Embeddings() { return *root_ / "emb"; }
  static fs::path Buyer() { return *root_ / "buyer.emb"; }
  fs::path Scratch(const std::string& name) { return *root_ / name; }

  CliRun ValueOffline(const fs::path& report,
                      std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"value",     "--offline",
                                  "--input",   Buyer().string(),
                                  "--sellers", Embeddings().string(),
                                  "--output",  report.string(),
                                  "--seed",    "2025"};
    args.insert(args.end(), extra.begin(), extra.end());
    return Cli(args);
  }

  static fs::path* root_;
};

fs::path* CliScenarioTest::root_ = nullptr;

TEST(ExitCodeTest, Mapping) {
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), kExitOk);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorCode::kValidation, "")),
            kExitValidation);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorCode::kParseError, "")),
            kExitValidation);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorCode::kShapeMismatch, "")),
            kExitValidation);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorCode::kTransport, "")), kExitRuntime);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorCode::kProtocolOrder, "")),
            kExitRuntime);
}

TEST(CsvFieldTest, RfcQuoting) {
  EXPECT_EQ(CsvField("plain"), "plain");
  EXPECT_EQ(CsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvField("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(CsvField("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(CsvField(""), "");
}

TEST(ParseSellerListTest, Cases) {
  ASSERT_OK_AND_ASSIGN(auto list, ParseSellerList("a=127.0.0.1:1,127.0.0.1:2"));
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0].first, "a");
  EXPECT_EQ(list[0].second, "127.0.0.1:1");
  EXPECT_EQ(list[1].first, "127.0.0.1:2");
  EXPECT_ERROR_CODE(ParseSellerList(""), ErrorCode::kValidation);
  EXPECT_ERROR_CODE(ParseSellerList("a=h:1,a=h:2"), ErrorCode::kValidation);
  EXPECT_ERROR_CODE(ParseSellerList("a=nohost"), ErrorCode::kValidation);
}

TEST(CliTest, HelpAndBadFlags) {
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
  EXPECT_EQ(Cli({}).code, kExitValidation);
  EXPECT_EQ(Cli({"value", "--bogus"}).code, kExitValidation);
  EXPECT_EQ(Cli({"report", "--input", "x", "--format", "xml"}).code,
            kExitValidation);
}

TEST(CliTest, ShippedConfigMatchesBuiltInDefault) {
  ASSERT_OK_AND_ASSIGN(std::string text,
                       ReadFile(std::string(PRIARTA_SOURCE_DIR) +
                                "/configs/default_scenario.json"));
  ASSERT_OK_AND_ASSIGN(ScenarioConfig shipped, ScenarioConfig::Parse(text));
  ASSERT_OK_AND_ASSIGN(ScenarioConfig a, shipped.Resolved());
  ASSERT_OK_AND_ASSIGN(ScenarioConfig b, DefaultScenarioConfig().Resolved());
  EXPECT_EQ(CanonicalDump(a.ToJson()), CanonicalDump(b.ToJson()));
}

TEST_F(CliScenarioTest, ScenarioWritesRosterDeterministically) {
  std::vector<std::string> names;
  for (const fs::directory_entry& e : fs::directory_iterator(Data())) {
    names.push_back(e.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names,
            (std::vector<std::string>{
                "buyer.raw", "encoder.json", "scenario.resolved.json",
                "seller-1.raw", "seller-2.raw", "seller-3.raw", "seller-4.raw",
                "seller-5.raw", "seller-6.raw", "seller-7.raw"}));
  const fs::path again = Scratch("again");
  ASSERT_EQ(Cli({"scenario", "--config", Config().string(), "--out-dir",
                 again.string()})
                .code,
            0);
  for (const std::string& name : names) {
    EXPECT_EQ(Slurp(Data() / name), Slurp(again / name)) << name;
  }
  // The resolved echo is itself a valid config that reproduces the data.
  const fs::path echo = Scratch("echo");
  ASSERT_EQ(
      Cli({"scenario", "--config", (Data() / "scenario.resolved.json").string(),
           "--out-dir", echo.string()})
          .code,
      0);
  EXPECT_EQ(Slurp(Data() / "seller-3.raw"), Slurp(echo / "seller-3.raw"));
}

TEST_F(CliScenarioTest, ScenarioValidationErrors) {
  Json json = DefaultScenarioConfig().ToJson();
  json["sellers"] = Json::array();
  Spit(Scratch("zero.json"), CanonicalDump(json));
  CliRun run = Cli({"scenario", "--config", Scratch("zero.json").string(),
                    "--out-dir", Scratch("zero").string()});
  EXPECT_EQ(run.code, kExitValidation);
  EXPECT_NE(run.err.find("sellers"), std::string::npos) << run.err;

  json = DefaultScenarioConfig().ToJson();
  json["sellers"][0]["node_id"] = "../escape";
  Spit(Scratch("path.json"), CanonicalDump(json));
  EXPECT_EQ(Cli({"scenario", "--config", Scratch("path.json").string(),
                 "--out-dir", Scratch("path").string()})
                .code,
            kExitValidation);
  EXPECT_EQ(Cli({"scenario", "--config", Scratch("missing.json").string(),
                 "--out-dir", Scratch("m").string()})
                .code,
            kExitValidation);
}

TEST_F(CliScenarioTest, EncodeRoundTripAndInvariance) {
  ASSERT_OK_AND_ASSIGN(SellerData raw,
                       LoadData((Data() / "buyer.raw").string()));
  ASSERT_OK_AND_ASSIGN(SellerData emb, LoadData(Buyer().string()));
  ASSERT_OK_AND_ASSIGN(
      Eigen::MatrixXd direct,
      Encode(DefaultScenarioConfig().encoder, std::get<RawDataset>(raw)));
  EXPECT_EQ(std::get<EmbeddingSet>(emb).vectors(), direct);
  // Sellers 5-7 copy the buyer with nuisance-only augmentation; with a
  // leakage-free encoder their embeddings are byte-identical to the buyer's.
  for (const char* copy : {"seller-5", "seller-6", "seller-7"}) {
    EXPECT_EQ(Slurp(Embeddings() / (std::string(copy) + ".emb")),
              Slurp(Buyer()))
        << copy;
  }
  EXPECT_NE(Slurp(Data() / "seller-5.raw"), Slurp(Data() / "buyer.raw"));
  // Encoding again is deterministic.
  const fs::path again = Scratch("buyer-again.emb");
  ASSERT_EQ(
      Cli({"encode", "--spec", (Data() / "encoder.json").string(), "--input",
           (Data() / "buyer.raw").string(), "--output", again.string()})
          .code,
      0);
  EXPECT_EQ(Slurp(again), Slurp(Buyer()));
}

TEST_F(CliScenarioTest, EncodeDimensionMismatch) {
  EncoderSpec spec = DefaultScenarioConfig().encoder;
  spec.input_dim = 30;
  spec.signal_dims = 16;
  Spit(Scratch("wide.json"), CanonicalDump(spec.ToJson()));
  const CliRun run = Cli({"encode", "--spec", Scratch("wide.json").string(),
                          "--input", (Data() / "buyer.raw").string(),
                          "--output", Scratch("x.emb").string()});
  EXPECT_EQ(run.code, kExitValidation);
  EXPECT_NE(run.err.find("SHAPE_MISMATCH"), std::string::npos) << run.err;
}

TEST_F(CliScenarioTest, OfflineValuationRanksDisjointSellerFirst) {
  const fs::path report_path = Scratch("offline.json");
  const CliRun run =
      ValueOffline(report_path, {"--epsilon", "0.8", "--delta", "1e-5"});
  ASSERT_EQ(run.code, 0) << run.err;
  ASSERT_OK_AND_ASSIGN(ValuationReport report,
                       ValuationReport::Parse(Slurp(report_path)));
  EXPECT_EQ(report.entries.size(), 7u);
  EXPECT_EQ(report.ranking.front(), "seller-1");
  EXPECT_EQ(report.params_echo["epsilon"], 0.8);
  EXPECT_EQ(report.params_echo["delta"], 1e-5);
  EXPECT_EQ(report.params_echo["seed"], 2025);
  // Replays byte-identically.
  ASSERT_EQ(ValueOffline(Scratch("offline2.json"),
                         {"--epsilon", "0.8", "--delta", "1e-5"})
                .code,
            0);
  EXPECT_EQ(Slurp(report_path), Slurp(Scratch("offline2.json")));
}

TEST_F(CliScenarioTest, NetworkModeMatchesOfflineMode) {
  std::atomic<bool> stop{false};
  std::vector<std::thread> servers;
  std::vector<std::string> sellers;
  for (int i = 1; i <= 7; ++i) {
    const std::string id = "seller-" + std::to_string(i);
    std::promise<int> port;
    std::future<int> bound = port.get_future();
    servers.emplace_back([&, id, p = std::move(port)]() mutable {
      std::ostringstream out;
      ServeOptions options;
      options.input_path = (Embeddings() / (id + ".emb")).string();
      absl::Status s = RunServeCommand(options, stop, out,
                                       [&p](int port) { p.set_value(port); });
      if (!s.ok()) p.set_value(-1);
    });
    const int p = bound.get();
    ASSERT_GT(p, 0);
    sellers.push_back(id + "=127.0.0.1:" + std::to_string(p));
  }
  std::string list;
  for (const std::string& s : sellers) list += (list.empty() ? "" : ",") + s;
  const CliRun network =
      Cli({"value", "--input", Buyer().string(), "--sellers", list, "--output",
           Scratch("network.json").string(), "--seed", "2025", "--concurrent"});
  stop.store(true);
  for (std::thread& t : servers) t.join();
  ASSERT_EQ(network.code, 0) << network.err;
  ASSERT_EQ(ValueOffline(Scratch("offline3.json")).code, 0);
  EXPECT_EQ(Slurp(Scratch("network.json")), Slurp(Scratch("offline3.json")));
}

TEST_F(CliScenarioTest, UnreachableSellersExitThree) {
  const CliRun run = Cli({"value", "--input", Buyer().string(), "--sellers",
                          "a=127.0.0.1:1,b=127.0.0.1:2", "--output",
                          Scratch("dead.json").string()});
  EXPECT_EQ(run.code, kExitAllSellersFailed);
  ASSERT_OK_AND_ASSIGN(ValuationReport report,
                       ValuationReport::Parse(Slurp(Scratch("dead.json"))));
  EXPECT_EQ(report.num_succeeded(), 0);
  EXPECT_EQ(report.entries.size(), 2u);
  EXPECT_EQ(report.params_echo["mode"], "secure");
}

TEST_F(CliScenarioTest, OversizedSubsetFailsEverySeller) {
  const CliRun run =
      ValueOffline(Scratch("big.json"), {"--subset-size", "6000"});
  EXPECT_EQ(run.code, kExitAllSellersFailed);
  EXPECT_NE(run.out.find("INSUFFICIENT_DATA"), std::string::npos) << run.out;
}

TEST_F(CliScenarioTest, ValueValidation) {
  EXPECT_EQ(ValueOffline(Scratch("v.json"), {"--epsilon", "1.5"}).code,
            kExitValidation);
  EXPECT_EQ(
      Cli({"value", "--input", (Data() / "buyer.raw").string(), "--sellers",
           "a=127.0.0.1:1", "--output", Scratch("v.json").string()})
          .code,
      kExitValidation);  // raw buyer without --spec
  EXPECT_EQ(
      Cli({"value", "--offline", "--input", Buyer().string(), "--sellers",
           Scratch("nowhere").string(), "--output", Scratch("v.json").string()})
          .code,
      kExitValidation);
}

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  // Minimal RFC 4180 reader for the test.
  std::vector<std::vector<std::string>> rows(1, std::vector<std::string>(1));
  bool quoted = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        rows.back().back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        rows.back().back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rows.back().emplace_back();
    } else if (c == '\r') {
    } else if (c == '\n') {
      rows.emplace_back(1);
    } else {
      rows.back().back() += c;
    }
  }
  if (rows.back().size() == 1 && rows.back()[0].empty()) rows.pop_back();
  return rows;
}

ValuationReport SmallReport(bool degenerate) {
  ValuationReport r;
  r.entries = {{"alpha", 2.5, 1.0, false, ""},
               {"beta", degenerate ? 2.5 : 0.1 + 0.2, 0.0, false, ""},
               {"gamma", 0.0, 0.0, true, "TRANSPORT: refused, \"twice\""}};
  if (degenerate) r.entries[0].normalized = 0.0;
  r.ranking = {"alpha", "beta"};
  r.normalization_degenerate = degenerate;
  return r;
}

TEST_F(CliScenarioTest, ReportFormats) {
  const ValuationReport report = SmallReport(false);
  Spit(Scratch("small.json"), report.Serialize());
  CliRun run = Cli({"report", "--input", Scratch("small.json").string()});
  ASSERT_EQ(run.code, 0) << run.err;
  for (const char* needle :
       {"alpha", "beta", "gamma", "raw_w2", "normalized", "rank", "2.500000"}) {
    EXPECT_NE(run.out.find(needle), std::string::npos) << needle;
  }
  EXPECT_EQ(run.out.find("degenerate"), std::string::npos);

  run = Cli(
      {"report", "--input", Scratch("small.json").string(), "--format", "csv"});
  ASSERT_EQ(run.code, 0) << run.err;
  const auto rows = ParseCsv(run.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][0], "node_id");
  for (size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(std::stod(rows[i + 1][1]), report.entries[i].raw_w2);
    EXPECT_EQ(std::stod(rows[i + 1][2]), report.entries[i].normalized);
    EXPECT_EQ(rows[i + 1][3], std::to_string(i + 1));
  }
  EXPECT_EQ(rows[3][4], "true");
  EXPECT_EQ(rows[3][5], report.entries[2].failure_reason);

  Spit(Scratch("flat.json"), SmallReport(true).Serialize());
  run = Cli({"report", "--input", Scratch("flat.json").string()});
  EXPECT_NE(run.out.find(DegenerateFootnote()), std::string::npos);
  run = Cli(
      {"report", "--input", Scratch("flat.json").string(), "--format", "csv"});
  EXPECT_NE(run.err.find(DegenerateFootnote()), std::string::npos);
}

TEST_F(CliScenarioTest, CorruptReportIsParseError) {
  const std::string text = SmallReport(false).Serialize();
  Spit(Scratch("corrupt.json"), text.substr(0, text.size() / 2));
  const CliRun run =
      Cli({"report", "--input", Scratch("corrupt.json").string()});
  EXPECT_EQ(run.code, kExitValidation);
  EXPECT_NE(run.err.find("PARSE_ERROR"), std::string::npos) << run.err;
  EXPECT_NE(run.err.find("byte"), std::string::npos) << run.err;
}

TEST_F(CliScenarioTest, RobustnessAppendsDeviations) {
  const fs::path report = Scratch("robust.json");
  ASSERT_EQ(ValueOffline(report).code, 0);
  CliRun run = Cli({"robustness", "--config", Config().string(), "--input",
                    report.string()});
  ASSERT_EQ(run.code, 0) << run.err;
  ASSERT_OK_AND_ASSIGN(ValuationReport r,
                       ValuationReport::Parse(Slurp(report)));
  ASSERT_TRUE(r.robustness.has_value());
  ASSERT_EQ(r.robustness->size(), 5u);
  for (const RobustnessEntry& e : *r.robustness) EXPECT_LE(e.deviation, 1e-12);
  run = Cli({"report", "--input", report.string()});
  EXPECT_NE(run.out.find("robustness"), std::string::npos);

  const fs::path independent = Scratch("robust-ind.json");
  run = Cli({"robustness", "--config", Config().string(), "--input",
             report.string(), "--output", independent.string(),
             "--independent-seeds"});
  ASSERT_EQ(run.code, 0) << run.err;
  ASSERT_OK_AND_ASSIGN(r, ValuationReport::Parse(Slurp(independent)));
  for (const RobustnessEntry& e : *r.robustness) EXPECT_GT(e.deviation, 0.0);
}

TEST_F(CliScenarioTest, RobustnessNoOpAndBadSource) {
  Json json = DefaultScenarioConfig().ToJson();
  Json fresh = Json::array();
  for (const Json& s : json["sellers"]) {
    if (s["kind"] == "fresh") fresh.push_back(s);
  }
  json["sellers"] = fresh;
  Spit(Scratch("fresh.json"), CanonicalDump(json));
  Spit(Scratch("r.json"), SmallReport(false).Serialize());
  CliRun run = Cli({"robustness", "--config", Scratch("fresh.json").string(),
                    "--input", Scratch("r.json").string()});
  EXPECT_EQ(run.code, 0);
  EXPECT_NE(run.out.find("no augmented_copy sellers"), std::string::npos);
  EXPECT_EQ(Slurp(Scratch("r.json")), SmallReport(false).Serialize());

  json = DefaultScenarioConfig().ToJson();
  json["sellers"][3]["source"] = "nobody";
  Spit(Scratch("bad-source.json"), CanonicalDump(json));
  run = Cli({"robustness", "--config", Scratch("bad-source.json").string(),
             "--input", Scratch("r.json").string()});
  EXPECT_EQ(run.code, kExitValidation);
  EXPECT_NE(run.err.find("nobody"), std::string::npos) << run.err;
}

}  // namespace
}  // namespace priarta::cli

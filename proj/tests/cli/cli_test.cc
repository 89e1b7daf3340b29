// Copyright 2026 The QSDC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commands.h"

namespace qsdc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "qsdc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Outcome o;
    o.code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qsdc_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST(Cli, SdcExampleDecodesBothPairs) {
    const Outcome o = run({"sdc", "--family", "bell", "--locking", "dcnot", "-N", "4", "--b", "1,2", "--c", "3,0",
                           "--seed", "7"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const json j = json::parse(o.out);
    EXPECT_EQ(j["command"], "sdc");
    EXPECT_EQ(j["seed"], 7);
    EXPECT_EQ(j["results"]["bob_decoded"], json({1, 2}));
    EXPECT_EQ(j["results"]["charlie_decoded"], json({3, 0}));
    EXPECT_EQ(j["config"]["N"], 4);
    EXPECT_TRUE(j.contains("wall_time_s"));
}

TEST(Cli, VerifyHidingExample) {
    const Outcome o = run({"verify-hiding", "--family", "w", "--locking", "qft", "-N", "2"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const json j = json::parse(o.out);
    EXPECT_LE(j["results"]["max_trace_distance"].get<double>(), 1e-9);
    EXPECT_EQ(j["results"]["hidden"], true);
}

TEST(Cli, FairTrialsEmitDetectionCurveCsv) {
    const Outcome o = run({"fair", "-n", "2", "-s", "8", "--adversary", "random-state", "--trials", "1000", "--seed",
                           "1"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    std::istringstream lines(o.out);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header.rfind("seed,", 0), 0u) << header;
    for (const char* col : {",m,", ",p_hat,", ",ci_lo,", ",ci_hi"}) {
        EXPECT_NE(header.find(col), std::string::npos) << col;
    }
    std::size_t rows = 0;
    for (std::string line; std::getline(lines, line);) rows++;
    EXPECT_EQ(rows, 8u);  // m = 1..s
}

TEST(Cli, FormatJsonOverridesTableDefault) {
    const Outcome o = run({"detection-curve", "-n", "1", "-s", "2", "--trials", "1000", "--format", "json"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const json j = json::parse(o.out);
    EXPECT_EQ(j["command"], "detection-curve");
    EXPECT_FALSE(j["results"]["rows"].empty());
}

TEST(Cli, CsvForSingleRunFlattensResults) {
    const Outcome o = run({"sdc", "-N", "2", "--b", "1,0", "--c", "0,1", "--format", "csv"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    std::istringstream lines(o.out);
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_FALSE(std::getline(lines, extra));
    EXPECT_EQ(header.rfind("seed,", 0), 0u);
    EXPECT_NE(header.find("bob_decoded"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
    EXPECT_EQ(run({"sdc", "--family", "tetrahedron"}).code, kExitConfig);
    EXPECT_EQ(run({"sdc", "-N", "3"}).code, kExitConfig);
    EXPECT_EQ(run({"sdc", "-N", "4", "--b", "4,0"}).code, kExitConfig);
    EXPECT_EQ(run({"sdc", "--b", "1"}).code, kExitConfig);
    EXPECT_EQ(run({"fair", "-n", "0"}).code, kExitConfig);
    EXPECT_EQ(run({"fair", "--adversary", "sneaky"}).code, kExitConfig);
    EXPECT_EQ(run({"detection-curve", "-n", "2", "-s", "2", "--trials", "10"}).code, kExitConfig);
    EXPECT_EQ(run({"sdc", "--format", "xml"}).code, kExitConfig);
    EXPECT_EQ(run({"no-such-command"}).code, kExitConfig);
    EXPECT_EQ(run({}).code, kExitConfig);
    const Outcome o = run({"sdc", "--bogus"});
    EXPECT_EQ(o.code, kExitConfig);
    EXPECT_NE(o.err.find("--family"), std::string::npos) << "usage is printed";
}

TEST(Cli, HelpExitsZero) {
    const Outcome o = run({"--help"});
    EXPECT_EQ(o.code, kExitOk);
    EXPECT_NE(o.out.find("verify-hiding"), std::string::npos);
}

TEST(Cli, IdenticalInvocationsGiveIdenticalReportsModuloWallTime) {
    const std::vector<std::string> args{"fair", "-n", "2", "-s", "3", "--adversary", "random-state", "--step", "2",
                                        "--seed", "99"};
    json a = json::parse(run(args).out);
    json b = json::parse(run(args).out);
    a.erase("wall_time_s");
    b.erase("wall_time_s");
    EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(CliTest, OutWritesFileAndLeavesNoTemporaries) {
    const fs::path out = dir_ / "report.json";
    const Outcome o = run({"teleport", "-M", "3", "-N", "4", "--seed", "5", "-o", out.string()});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    EXPECT_TRUE(o.out.empty());
    const json j = json::parse(slurp(out));
    ASSERT_EQ(j["results"]["fidelities"].size(), 3u);
    for (const auto& f : j["results"]["fidelities"]) EXPECT_NEAR(f.get<double>(), 1.0, 1e-9);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir_)) {
        (void)e;
        files++;
    }
    EXPECT_EQ(files, 1u);
}

TEST_F(CliTest, LogRequiresSingleRun) {
    EXPECT_EQ(run({"fair", "--trials", "1000", "--log", (dir_ / "x.log").string()}).code, kExitConfig);
}

class ReplayTest : public CliTest, public ::testing::WithParamInterface<std::vector<std::string>> {};

TEST_P(ReplayTest, UnmodifiedLogReplaysOk) {
    const fs::path log = dir_ / "run.log";
    std::vector<std::string> args = GetParam();
    args.push_back("--log");
    args.push_back(log.string());
    const Outcome first = run(args);
    ASSERT_NE(first.code, kExitConfig) << first.err;
    const Outcome o = run({"replay", log.string()});
    ASSERT_EQ(o.code, kExitOk) << o.err << o.out;
    EXPECT_EQ(json::parse(o.out)["results"]["status"], "OK");
}

INSTANTIATE_TEST_SUITE_P(
    Protocols, ReplayTest,
    ::testing::Values(std::vector<std::string>{"sdc", "--family", "ghz", "--locking", "qft", "-N", "4", "--seed", "3"},
                      std::vector<std::string>{"sdc", "--locking", "swap", "--adversary", "swap-detain", "--seed", "4"},
                      std::vector<std::string>{"fair", "-n", "2", "-s", "3", "--adversary", "abort-at", "--step", "3"},
                      std::vector<std::string>{"fair", "--family", "w", "--adversary", "random-state", "--seed", "8"},
                      std::vector<std::string>{"secure", "-n", "2", "-r", "3", "--adversary", "intercept-resend"},
                      std::vector<std::string>{"combined", "-n", "1", "-s", "2", "-r", "2", "--bob",
                                               "intercept-resend"},
                      std::vector<std::string>{"teleport", "-M", "2", "-N", "2", "--outcomes", "1,1;0,1"},
                      std::vector<std::string>{"contract", "-k", "3", "-n", "1", "-s", "2", "--adversary",
                                               "abort-at", "--charlie-sdc", "2", "--step", "1"}));

TEST_F(CliTest, EditedEventDivergesAtThatRecord) {
    const fs::path log = dir_ / "run.log";
    ASSERT_EQ(run({"fair", "-n", "1", "-s", "2", "--seed", "11", "--log", log.string()}).code, kExitOk);
    std::istringstream in(slurp(log));
    std::string edited, line;
    std::size_t record = 0, target = 4;
    std::string target_seq;
    while (std::getline(in, line)) {
        if (!line.starts_with("#") && record++ == target) {
            target_seq = line.substr(0, line.find(','));
            const auto pos = line.find("CHARLIE");
            line = pos == std::string::npos ? line + " " : line.replace(pos, 7, "JUDGE");
        }
        edited += line + "\n";
    }
    spit(log, edited);
    const Outcome o = run({"replay", log.string()});
    EXPECT_EQ(o.code, kExitInvariant);
    const json j = json::parse(o.out);
    EXPECT_EQ(j["results"]["status"], "DIVERGED");
    EXPECT_EQ(j["results"]["first_divergence"], target);
    EXPECT_EQ(j["results"]["recorded"].get<std::string>().rfind(target_seq + ",", 0), 0u);
}

TEST_F(CliTest, TruncatedLogIsAReplayError) {
    const fs::path log = dir_ / "run.log";
    ASSERT_EQ(run({"secure", "--seed", "2", "--log", log.string()}).code, kExitOk);
    const std::string text = slurp(log);
    for (std::size_t cut : {text.size() / 2, text.rfind("# end")}) {
        spit(log, text.substr(0, cut));
        const Outcome o = run({"replay", log.string()});
        EXPECT_EQ(o.code, kExitConfig);
        EXPECT_NE(o.err.find("truncated"), std::string::npos) << o.err;
    }
}

TEST_F(CliTest, ReplayRejectsForeignFiles) {
    const fs::path log = dir_ / "foreign.log";
    spit(log, "hello\n");
    EXPECT_EQ(run({"replay", log.string()}).code, kExitConfig);
    EXPECT_EQ(run({"replay", (dir_ / "missing.log").string()}).code, kExitConfig);
    spit(log, "# qsdc-eventlog v1\n# config {\"protocol\":\"carrier-pigeon\"}\n# end 0\n");
    EXPECT_EQ(run({"replay", log.string()}).code, kExitConfig);
}

TEST_F(CliTest, ContractWritesFragmentsAndSetup) {
    const fs::path bob = dir_ / "bob.frag", charlie = dir_ / "charlie.frag", setup = dir_ / "setup.json";
    const Outcome o = run({"contract", "-k", "3", "-n", "1", "-s", "2", "--contract", "101", "--bob-fragments",
                           bob.string(), "--charlie-fragments", charlie.string(), "--setup-out", setup.string()});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const json j = json::parse(o.out);
    EXPECT_EQ(j["results"]["completed"], true);
    EXPECT_EQ(j["results"]["bob"]["enforced"], true);
    EXPECT_EQ(j["results"]["charlie"]["enforced"], true);
    EXPECT_EQ(json::parse(slurp(setup))["k"], 3);
    EXPECT_FALSE(slurp(bob).empty());
    EXPECT_FALSE(slurp(charlie).empty());
}

TEST(Cli, ContractCheatTable) {
    const Outcome o = run({"contract", "--cheat", "-k", "1", "-n", "1", "-s", "1", "--trials", "1000"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    std::istringstream lines(o.out);
    std::string header;
    std::getline(lines, header);
    EXPECT_NE(header.find("abort_step,policy"), std::string::npos) << header;
}

TEST(Cli, SecureSweepTable) {
    const Outcome o = run({"secure", "-n", "1", "-r", "1,2", "--trials", "300", "--format", "json"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const json rows = json::parse(o.out)["results"]["rows"];
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1]["r"], 2);
}

TEST(Cli, PartialUnlockTable) {
    const Outcome o = run({"verify-hiding", "--partial", "-n", "2", "-s", "1", "--format", "json"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const json rows = json::parse(o.out)["results"]["rows"];
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_LE(rows[0]["max_pairwise_distance"].get<double>(), 1e-9);
}

}  // namespace
}  // namespace qsdc::cli

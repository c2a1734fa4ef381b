// Copyright 2026 The qentropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "qentropy/entropies.hpp"
#include "qentropy/serialize.hpp"

namespace {

using nlohmann::json;
using namespace qentropy;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string last_field(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  return last.substr(last.rfind(',') + 1);
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

TEST(CliEval, TsallisOfFairCoin) {
  const auto r = run({"eval", "--kind", "tsallis", "--q", "2", "--p", "0.5,0.5", "--out", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(last_field(r.out), "0.5");
}

TEST(CliEval, ShannonOfCertainOutcome) {
  const auto r = run({"eval", "--kind", "shannon", "--p", "1,0", "--out", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(last_field(r.out), "0");
}

TEST(CliEval, MatchesLibraryToFifteenDigits) {
  const auto r = run({"eval", "--kind", "n_class3", "--q", "2", "--p", "0.5,0.5", "--out", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(last_field(r.out), format_number(n_class3(QParam(2.0), ProbVec::uniform(2))));
}

TEST(CliEval, TableHasOneRowPerKindQAndDistribution) {
  const auto r = run({"eval", "--kind", "tsallis,class3", "--q", "0.5,2", "--p", "0.25,0.75"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(CliEval, JsonCarriesFullPrecision) {
  const auto r = run({"eval", "--kind", "tsallis", "--q", "0.5", "--p", "0.1,0.2,0.7", "--out", "json",
                      "--no-timestamp"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("rows").at(0).at("value").get<double>(),
            tsallis(QParam(0.5), make_probvec({0.1, 0.2, 0.7})));
  EXPECT_FALSE(doc.contains("timestamp"));
}

TEST(CliEval, InvalidInputExitsTwo) {
  EXPECT_EQ(run({"eval", "--kind", "tsallis", "--q", "2", "--p", "0.3,0.8"}).code, 2);
  EXPECT_EQ(run({"eval", "--kind", "tsallis", "--q", "2", "--p", "-0.5,1.5"}).code, 2);
  EXPECT_EQ(run({"eval", "--kind", "renyi", "--q", "2", "--p", "0.5,0.5"}).code, 2);
  EXPECT_EQ(run({"eval", "--kind", "tsallis", "--q", "0", "--p", "0.5,0.5"}).code, 2);
  EXPECT_EQ(run({"eval", "--kind", "tsallis", "--p", "0.5,0.5"}).code, 2);
  EXPECT_EQ(run({"eval", "--kind", "class2", "--phi", "2", "--q", "2", "--p", "0.5,0.5"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliEval, ReadsDistributionsFromFile) {
  const auto path = temp_file("qentropy_cli_dists.json", R"([{"p":[0.5,0.5]},[0.25,0.75]])");
  const auto r = run({"eval", "--kind", "tsallis", "--q", "2", "--in", path.string(), "--out", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = json::parse(r.out).at("rows");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows.at(0).at("value").get<double>(), 0.5);
  EXPECT_EQ(rows.at(1).at("value").get<double>(), 0.375);
}

TEST(CliEval, PolynomialPhi) {
  const auto r = run({"eval", "--kind", "class2", "--phi", "0,1,1,0.5", "--q", "2", "--p", "0.5,0.5",
                      "--out", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(last_field(r.out), format_number(0.5 / phi_example(QParam(2.0))));
}

TEST(CliHelp, ExitsZero) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"verify", "--help"}).code, 0);
}

TEST(CliVerify, PseudoAdditivityOfTsallisPasses) {
  EXPECT_EQ(run({"verify", "--identity", "pseudo", "--kind", "tsallis", "--q", "2", "--samples", "100",
                 "--seed", "7", "--expect", "pass"})
                .code,
            0);
}

TEST(CliVerify, ClassTwoBreaksPseudoAdditivity) {
  const auto r = run({"verify", "--identity", "pseudo", "--kind", "class2", "--q", "2", "--expect", "fail",
                      "--out", "table"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("pseudoadditivity"), std::string::npos);
  EXPECT_NE(r.out.find(" fail"), std::string::npos);
  EXPECT_EQ(run({"verify", "--identity", "pseudo", "--kind", "class2", "--q", "2", "--expect", "pass"}).code,
            1);
}

TEST(CliVerify, ClassThreeBreaksShannonAdditivity) {
  EXPECT_EQ(run({"verify", "--identity", "shannon", "--kind", "class3", "--q", "2", "--expect", "fail"}).code,
            0);
}

TEST(CliVerify, ReportsRerunStandalone) {
  const auto r = run({"verify", "--identity", "shannon", "--kind", "n_class2", "--q-grid", "0.5,3",
                      "--samples", "20", "--seed", "5", "--no-timestamp"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  ASSERT_EQ(doc.at("reports").size(), 20u);
  for (const auto& row : doc.at("reports")) {
    const auto again = recompute_report(row);
    EXPECT_EQ(again.residual, row.at("residual").get<double>());
    EXPECT_EQ(again.lhs, row.at("lhs").get<double>());
  }
}

TEST(CliVerify, OutputIsCanonicallyOrdered) {
  const auto r = run({"verify", "--identity", "pseudo", "--kind", "tsallis,class3", "--q-grid", "3,0.5",
                      "--samples", "30", "--seed", "11", "--no-timestamp"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto reports = json::parse(r.out).at("reports");
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const auto key = [](const json& j) {
      return std::make_tuple(j.at("functional").at("kind").get<std::string>(), j.at("q").get<double>(),
                             j.at("input_hash").get<std::string>());
    };
    EXPECT_LE(key(reports[i - 1]), key(reports[i]));
  }
}

TEST(CliVerify, CsvEchoesConfig) {
  const auto r = run({"verify", "--identity", "pseudo", "--kind", "tsallis", "--q", "2", "--samples", "3",
                      "--out", "csv", "--no-timestamp"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string prefix = "# qentropy verify ";
  ASSERT_EQ(r.out.rfind(prefix, 0), 0u);
  const auto header = json::parse(r.out.substr(prefix.size(), r.out.find('\n') - prefix.size()));
  EXPECT_EQ(header.at("identity"), "pseudo");
  EXPECT_EQ(header.at("samples"), 3);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, residual_csv_header());
}

TEST(CliVerify, SystemsFromFile) {
  const auto path = temp_file("qentropy_cli_systems.json", R"([{"a":[0.5,0.5],"b":[0.5,0.5]}])");
  const auto r = run({"verify", "--identity", "pseudo", "--kind", "class2", "--q", "2", "--in",
                      path.string(), "--form", "original"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = json::parse(r.out).at("reports").at(0);
  EXPECT_NEAR(row.at("residual").get<double>(), -0.06, 1e-12);
  const auto bad = temp_file("qentropy_cli_refinement.json",
                             R"({"marginal":[0.5,0.5],"conditionals":[[1],[0.5,0.5]]})");
  EXPECT_EQ(run({"verify", "--identity", "pseudo", "--kind", "tsallis", "--q", "2", "--in", bad.string()})
                .code,
            2);
}

TEST(CliVerify, StrictInconclusiveExitsThree) {
  EXPECT_EQ(run({"verify", "--identity", "pseudo", "--kind", "tsallis", "--q", "2", "--samples", "50",
                 "--pass-tol", "0", "--fail-tol", "1", "--strict"})
                .code,
            3);
  EXPECT_EQ(run({"verify", "--identity", "pseudo", "--kind", "tsallis", "--q", "2", "--pass-tol", "1",
                 "--fail-tol", "0.5"})
                .code,
            2);
}

TEST(CliClassify, LabelsMatchExpectations) {
  EXPECT_EQ(run({"classify", "--kind", "tsallis", "--samples", "200", "--expect", "class1"}).code, 0);
  EXPECT_EQ(run({"classify", "--kind", "class3", "--samples", "200", "--expect", "class3"}).code, 0);
  EXPECT_EQ(run({"classify", "--kind", "n_class2", "--samples", "200", "--expect", "class2"}).code, 0);
  EXPECT_EQ(run({"classify", "--kind", "class2", "--samples", "200", "--expect", "class1"}).code, 1);
  EXPECT_EQ(run({"classify", "--kind", "class2", "--expect", "pass"}).code, 2);
}

TEST(CliClassify, DeterministicWithoutTimestamp) {
  const std::vector<std::string> args{"classify", "--kind", "tsallis", "--seed", "42",
                                      "--samples", "100", "--no-timestamp"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto doc = json::parse(a.out);
  EXPECT_EQ(doc.at("reports").at(0).at("label"), "class1");
  EXPECT_EQ(doc.at("config").at("seed"), 42);
}

TEST(CliClassify, TimestampIsPresentByDefault) {
  const auto r = run({"classify", "--kind", "tsallis", "--samples", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out).contains("timestamp"));
}

TEST(CliClassify, SeedFromEnvironment) {
  ::setenv("QENTROPY_SEED", "9", 1);
  const auto env = run({"classify", "--kind", "class3", "--samples", "50", "--no-timestamp"});
  ::unsetenv("QENTROPY_SEED");
  const auto flag = run({"classify", "--kind", "class3", "--samples", "50", "--seed", "9", "--no-timestamp"});
  EXPECT_EQ(env.out, flag.out);
  EXPECT_EQ(json::parse(env.out).at("config").at("seed"), 9);
}

TEST(CliClassify, StrictInconclusiveExitsThree) {
  EXPECT_EQ(run({"classify", "--kind", "tsallis", "--samples", "50", "--pass-tol", "0", "--fail-tol", "1",
                 "--strict"})
                .code,
            3);
}

TEST(CliLimit, ConvergesForEveryKind) {
  const auto r = run({"limit", "--kind", "all", "--samples", "10", "--seed", "4", "--out", "table"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find(" no"), std::string::npos);
}

TEST(CliLimit, ImpossibleToleranceFails) {
  EXPECT_EQ(run({"limit", "--kind", "class3", "--p", "0.1,0.2,0.7", "--tol", "0"}).code, 1);
}

TEST(CliSearch, FindsPseudoWitnessForClassTwo) {
  const auto r = run({"search", "--kind", "class2", "--identity", "pseudo", "--q", "2", "--expect", "fail"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("witness"), std::string::npos);
}

TEST(CliSearch, NotFoundForTsallis) {
  EXPECT_EQ(run({"search", "--kind", "tsallis", "--identity", "pseudo", "--q", "2", "--budget", "20"}).code,
            1);
  EXPECT_EQ(run({"search", "--kind", "tsallis", "--identity", "pseudo", "--q", "2", "--budget", "20",
                 "--expect", "pass"})
                .code,
            0);
}

}  // namespace

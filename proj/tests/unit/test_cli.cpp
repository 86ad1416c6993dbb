// Copyright 2026 The jacres Authors.
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace jacres::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::path(JACRES_TEST_TMPDIR) / ("cli_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

TEST(Cli, UsageErrorsAreValidation) {
  EXPECT_EQ(invoke({}).code, kExitValidation);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(invoke({"ich"}).code, kExitValidation);  // --n missing
  EXPECT_EQ(invoke({"construct", "--n", "10"}).code, kExitValidation);  // --kind missing
  EXPECT_EQ(invoke({"construct", "--kind", "theorem2", "--n", "10"}).code, kExitValidation);  // epsilon
  EXPECT_EQ(invoke({"experiment", "--kind", "theorem1", "--n", "10", "--trials", "0"}).code, kExitValidation);
  EXPECT_EQ(invoke({"bounds", "--n", "10", "--format", "xml"}).code, kExitValidation);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, ResourceRefusal) {
  const auto r = invoke({"ich", "--n", "16"});
  EXPECT_EQ(r.code, kExitResource);
  EXPECT_NE(r.err.find("limit"), std::string::npos);
  EXPECT_EQ(invoke({"experiment", "--kind", "theorem1", "--n", "25"}).code, kExitResource);
}

TEST(Cli, GlobalFlagsBeforeOrAfterSubcommand) {
  const auto a = invoke({"--n", "5", "ich"});
  const auto b = invoke({"ich", "--n", "5"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["size"], 3);
  EXPECT_TRUE(j["verified"].get<bool>());
}

TEST(Cli, ConstructThenVerifyRoundTrip) {
  const auto path = temp_path("triple.json");
  auto r = invoke({"construct", "--kind", "theorem1", "--n", "12", "--seed", "3", "--output", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  r = invoke({"verify", "--input", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["scope"], "all_pairs");
  EXPECT_TRUE(j["necessary_conditions"]["passes"].get<bool>());
}

TEST(Cli, ExpectResolvingExitCode) {
  const auto path = temp_path("counterexample.json");
  // {0,1}, {0,2}, {0,3} over n = 4.
  write_file(path, R"({"n":4,"kind":"custom","seed":0,"k":3,"masks":["0000000000000003","0000000000000005","0000000000000009"]})");
  auto r = invoke({"verify", "--input", path.string()});
  EXPECT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["resolving"].get<bool>());
  EXPECT_EQ(j["witness"], nlohmann::json::array({"0000000000000001", "000000000000000f"}));
  r = invoke({"verify", "--input", path.string(), "--expect-resolving"});
  EXPECT_EQ(r.code, kExitNotResolving);
  r = invoke({"verify", "--input", temp_path("missing.json").string()});
  EXPECT_EQ(r.code, kExitValidation);
}

TEST(Cli, ConstructIsByteReproducible) {
  const auto a = invoke({"construct", "--kind", "theorem2", "--n", "40", "--epsilon", "1/2", "--seed", "9"});
  const auto b = invoke({"construct", "--kind", "theorem2", "--n", "40", "--epsilon", "1/2", "--seed", "9"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["k"], 29);
  EXPECT_EQ(j["masks"].size(), 58u);
}

TEST(Cli, BoundsCsv) {
  const auto r = invoke({"bounds", "--n", "20", "--k", "10,30"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  EXPECT_EQ(header, "n,k,log_sigma1,log_sigma2_exact,log_sigma2_hoeffding,W,log_sigma3");
  EXPECT_EQ(row1.substr(0, 6), "20,10,");
  EXPECT_EQ(row2.substr(0, 6), "20,30,");
}

TEST(Cli, EmbedCsv) {
  const auto lex = temp_path("lexicon.txt"), docs = temp_path("docs.txt");
  write_file(lex, "apple\nbanana\ncherry\ndate\n");
  write_file(docs, "Apple banana\nbanana APPLE\nzzz\n");
  const auto r = invoke({"embed", "--lexicon", lex.string(), "--docs", docs.string(), "--kind", "triple"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "doc,r0,r1,r2\n0,1/1,1/2,3/4\n1,1/1,1/2,3/4\n2,0/1,1/1,1/1\n");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  const auto d = invoke({"embed", "--lexicon", lex.string(), "--docs", docs.string(), "--kind", "triple", "--decimal"});
  EXPECT_NE(d.out.find("0,1,0.5,0.75"), std::string::npos);
}

TEST(Cli, ExperimentAndTable1) {
  auto r = invoke({"experiment", "--kind", "theorem1", "--n", "10", "--trials", "3", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "kind,n,k,landmarks,scope,W,trials,successes,success_rate,bound_name,log_bound");
  r = invoke({"table1", "--max-n", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\n4,3,3,3,"), std::string::npos);
  r = invoke({"dimension", "--n", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["beta"], 2);
}

}  // namespace
}  // namespace jacres::cli

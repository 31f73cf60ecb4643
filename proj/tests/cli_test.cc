// Copyright 2026 The mtree Authors.
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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

std::string Quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') {
      q += "'\\''";
    } else {
      q += c;
    }
  }
  return q + "'";
}

// Runs the CLI through the shell; stderr is discarded.
CliResult Cli(const std::string& args, const std::string& stdin_text = "") {
  std::string cmd = std::string(MTREE_CLI) + " " + args + " 2>/dev/null";
  if (!stdin_text.empty()) cmd = "printf '%s' " + Quote(stdin_text) + " | " + cmd;
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json J(const CliResult& r) { return nlohmann::json::parse(r.out); }

TEST(Cli, Metrics) {
  CliResult r = Cli("metrics " + Quote("{}"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(J(r), nlohmann::json::parse(R"j({"height":0,"nodes":1,"width":1})j"));
  r = Cli("metrics -", R"j({"children":[[0,{}],[1,{"children":[[0,{}]]}]]})j");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(J(r), nlohmann::json::parse(R"j({"height":2,"nodes":4,"width":2})j"));
}

TEST(Cli, ParseAndEmbed) {
  CliResult r = Cli("parse " + Quote("<1>p & q"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(J(r).at("and").size(), 2u);
  r = Cli("--format text parse " + Quote("<1>p&q"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "<1> p & q\n");
  r = Cli("embed --to-tree " + Quote("p & <0>q"));
  ASSERT_EQ(r.code, 0);
  const std::string tree = r.out;
  r = Cli("--format text embed --to-formula -", tree);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "p & T & (<0>(q & T & T) & T)\n");
  EXPECT_EQ(Cli("parse " + Quote("p &")).code, 65);
}

TEST(Cli, Apply) {
  CliResult r = Cli("apply " + Quote(R"j({"atoms":["p"]})j") + " " + Quote("rho_minus@e(i=1)"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(J(r), nlohmann::json::parse(R"j({"atoms":[],"children":[]})j"));
  EXPECT_EQ(Cli("apply " + Quote("{}") + " " + Quote("rho_minus@e(i=1)")).code, 1);
  EXPECT_EQ(Cli("apply " + Quote("{}") + " " + Quote("rho_minus@2(i=1)")).code, 1);
  EXPECT_EQ(Cli("apply " + Quote("{") + " " + Quote("rho_minus@e(i=1)")).code, 65);
}

TEST(Cli, Check) {
  const std::string d =
      R"j({"start":{"children":[[0,{"children":[[0,{"atoms":["p"]}]]}]]},)j"
      R"j("steps":[{"kind":"four","pos":[],"i":1}]})j";
  EXPECT_EQ(Cli("check --sys k -", d).code, 1);
  CliResult r = Cli("check --sys k4 -", d);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(J(r), nlohmann::json::parse(
                      R"j({"atoms":[],"children":[[0,{"atoms":["p"],"children":[]}]]})j"));
  r = Cli("check --sys k4 --trace -", d);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(J(r).at("trace").size(), 2u);
  // An empty derivation echoes its start tree.
  r = Cli("check -", R"j({"start":{"atoms":["q"]},"steps":[]})j");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(J(r), nlohmann::json::parse(R"j({"atoms":["q"],"children":[]})j"));
  EXPECT_EQ(Cli("check --sys nope -", d).code, 64);
}

TEST(Cli, Normalize) {
  const std::string d =
      R"j({"start":{"children":[[0,{"atoms":["p"]}]]},)j"
      R"j("steps":["rho_plus@1(i=1)","pi_plus@e(i=1)"]})j";
  CliResult r = Cli("normalize --verify-bounds -", d);
  ASSERT_EQ(r.code, 0);
  const nlohmann::json j = J(r);
  EXPECT_EQ(j.at("normal").at("replicative").size(), 1u);
  EXPECT_EQ(j.at("normal").at("atomic").size(), 2u);
  EXPECT_EQ(j.at("bounds").at("regime"), "without-J");
  const std::string stuck =
      R"j({"start":{"children":[[0,{"atoms":["p"],"children":[[0,{"atoms":["q"]}]]}]]},)j"
      R"j("steps":["rho_minus@1(i=1)","four@e(i=1)"]})j";
  EXPECT_EQ(Cli("normalize --sys k4 -", stuck).code, 1);
  EXPECT_EQ(Cli("normalize --sys k -", stuck).code, 65);
}

TEST(Cli, ProveAndOracle) {
  CliResult r = Cli("prove --sys rc " + Quote("<1>p & <0>q") + " " + Quote("<1>(p & <0>q)"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(J(r).at("verdict"), "proved");
  EXPECT_EQ(Cli("prove --sys k4 " + Quote("<0><0>p") + " " + Quote("<0>p")).code, 0);
  EXPECT_EQ(Cli("prove --sys k " + Quote("<1>p") + " " + Quote("<0>p")).code, 1);
  EXPECT_EQ(Cli("prove --sys k+m " + Quote("<1>p") + " " + Quote("<0>p")).code, 0);
  EXPECT_EQ(Cli("prove --sys rc --budget 2 p " + Quote("<0>p")).code, 2);
  EXPECT_EQ(Cli("prove --budget 0 p p").code, 64);
  r = Cli("oracle " + Quote("<0>(p & q)") + " " + Quote("<0>p"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(J(r).at("entails"), true);
  r = Cli("oracle p q");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(J(r).at("entails"), false);
}

TEST(Cli, Usage) {
  EXPECT_EQ(Cli("").code, 64);
  EXPECT_EQ(Cli("frobnicate").code, 64);
  EXPECT_EQ(Cli("--help").code, 0);
  EXPECT_EQ(Cli("--format xml parse p").code, 64);
}

}  // namespace

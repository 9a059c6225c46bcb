// Copyright 2026 The wallchamber Authors
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

#include "wallchamber/cli.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace wallchamber::cli {
namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(WALLCHAMBER_GOLDEN_DIR) + "/" + name,
                   std::ios::binary);
  EXPECT_TRUE(in.is_open()) << name;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct RunResult {
  int code = 0;
  std::string out, err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct GoldenCase {
  std::vector<std::string> args;
  std::string file;
};

// Every documented invocation must reproduce its stored output
// byte-for-byte.
TEST(CliGolden, DocumentedInvocations) {
  const std::vector<GoldenCase> cases = {
      {{"walls", "--n", "1", "--c1", "1,0", "--c2", "1", "--format", "json"},
       "walls_n1.json"},
      {{"walls", "--n", "1", "--c1", "1,0", "--c2", "0", "--format", "json"},
       "walls_n1_empty.json"},
      {{"dioph", "classify", "--x", "3"}, "dioph_classify_x3.txt"},
      {{"dioph", "classify", "--x", "3", "--format", "json"},
       "dioph_classify_x3.json"},
      {{"dioph", "bounds", "--x", "3", "--format", "json"},
       "dioph_bounds_x3.json"},
      {{"k3", "report", "--l2", "2", "--c2", "6", "--format", "json"},
       "k3_report_l2_2_c2_6.json"},
      {{"k3", "report", "--l2", "2", "--c2", "6"}, "k3_report_l2_2_c2_6.txt"},
      {{"minus-one", "--n", "2", "--format", "json"}, "minus_one_n2.json"},
      {{"crossings", "--n", "1", "--c1", "1,0", "--c2", "1", "--L0", "3,-1",
        "--L", "3,-2", "--format", "json"},
       "crossings_n1.json"},
      {{"analyze", "--n", "1", "--c1", "1,0", "--c2", "1", "--L", "3,-2",
        "--format", "json"},
       "analyze_n1.json"},
      {{"analyze", "--n", "7", "--c1", "0,1,1,1,1,1,1,1", "--c2", "-1",
        "--L", "10,-3,-3,-3,-3,-3,-3,-3", "--format", "json"},
       "analyze_n7_dimension_flag.json"},
  };
  for (const auto& c : cases) {
    RunResult r = run_cli(c.args);
    EXPECT_EQ(r.code, 0) << c.file << ": " << r.err;
    EXPECT_EQ(r.out, golden(c.file)) << c.file;
  }
}

TEST(CliRender, DeterministicBytes) {
  std::vector<std::string> args = {"analyze", "--n",  "1",   "--c1", "1,0",
                                   "--c2",    "1",    "--L", "3,-2",
                                   "--format", "json"};
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, 0);
}

// Parsing the JSON report back recovers the values the library computed.
TEST(CliRender, JsonRoundTrip) {
  RunResult r = run_cli({"walls", "--n", "1", "--c1", "1,0", "--c2", "1",
                         "--format", "json"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "walls");
  EXPECT_EQ(j["results"]["count"], 1);
  EXPECT_EQ(j["results"]["x"], 3);
  ASSERT_EQ(j["results"]["walls"].size(), 1u);
  EXPECT_EQ(j["results"]["walls"][0], "1,-2");

  lattice::SurfaceModel s(1);
  walls::WallSpec spec(s, lattice::parse_class("1,0"), 1);
  auto ws = walls::enumerate_walls(spec, walls::FullCone{});
  EXPECT_EQ(lattice::parse_class(j["results"]["walls"][0]), ws[0].zeta);
}

TEST(CliRender, DimensionFlagSurfacesInWarnings) {
  RunResult r = run_cli({"analyze", "--n", "7", "--c1", "0,1,1,1,1,1,1,1",
                         "--c2", "-1", "--L", "10,-3,-3,-3,-3,-3,-3,-3",
                         "--format", "json"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  ASSERT_EQ(j["warnings"].size(), 1u);
  EXPECT_NE(j["warnings"][0].get<std::string>().find("nonnegative"),
            std::string::npos);
  EXPECT_EQ(j["results"]["verdict"], "paper-asserts-empty");
}

TEST(CliExitCodes, InvalidInputIsTwo) {
  // polarization on a wall: precondition named in the diagnostic
  RunResult on_wall = run_cli({"analyze", "--n", "1", "--c1", "1,0", "--c2",
                               "1", "--L", "2,-1"});
  EXPECT_EQ(on_wall.code, 2);
  EXPECT_NE(on_wall.err.find("wall"), std::string::npos);

  RunResult not_ample = run_cli({"generic", "--n", "1", "--c1", "1,0",
                                 "--c2", "1", "--L", "1,0"});
  EXPECT_EQ(not_ample.code, 2);
  EXPECT_NE(not_ample.err.find("ample"), std::string::npos);

  RunResult bad_dims = run_cli({"walls", "--n", "2", "--c1", "1,0", "--c2",
                                "1"});
  EXPECT_EQ(bad_dims.code, 2);

  RunResult bad_flag = run_cli({"walls", "--c1", "1,0"});
  EXPECT_EQ(bad_flag.code, 2);

  RunResult small_x = run_cli({"dioph", "classify", "--x", "2"});
  EXPECT_EQ(small_x.code, 2);
  EXPECT_NE(small_x.err.find("brute_solutions"), std::string::npos);
}

TEST(CliGeneric, DistinguishesPolarizations) {
  RunResult gen = run_cli({"generic", "--n", "1", "--c1", "1,0", "--c2", "1",
                           "--L", "3,-1", "--format", "json"});
  ASSERT_EQ(gen.code, 0);
  EXPECT_TRUE(json::parse(gen.out)["results"]["generic"].get<bool>());

  RunResult nongen = run_cli({"generic", "--n", "1", "--c1", "1,0", "--c2",
                              "1", "--L", "2,-1", "--format", "json"});
  ASSERT_EQ(nongen.code, 0);
  json j = json::parse(nongen.out);
  EXPECT_FALSE(j["results"]["generic"].get<bool>());
  EXPECT_EQ(j["results"]["wall"], "1,-2");
}

TEST(CliConfig, BoundOverride) {
  std::string path = ::testing::TempDir() + "/wallchamber_config.json";
  {
    std::ofstream out(path);
    out << "{\"full_cone_b_bound\": 6}\n";
  }
  RunResult r = run_cli({"walls", "--n", "1", "--c1", "1,0", "--c2", "1",
                         "--format", "json", "--config", path});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["results"]["count"], 1);
}

TEST(CliSegmentRegion, RequiresEndpoints) {
  RunResult missing = run_cli({"walls", "--n", "1", "--c1", "1,0", "--c2",
                               "1", "--region", "segment"});
  EXPECT_EQ(missing.code, 2);

  RunResult ok = run_cli({"walls", "--n", "1", "--c1", "1,0", "--c2", "1",
                          "--region", "segment", "--L0", "3,-1", "--L",
                          "3,-2", "--format", "json"});
  ASSERT_EQ(ok.code, 0);
  EXPECT_EQ(json::parse(ok.out)["results"]["count"], 1);
}

}  // namespace
}  // namespace wallchamber::cli

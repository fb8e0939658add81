// Copyright 2026 The setcoh Authors
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

#include "setcoh/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "setcoh/io.hpp"

namespace setcoh {
namespace {

using io::Json;

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + "setcoh_" + name;
  std::ofstream(path) << text;
  return path;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "setcoh");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json states_doc(const std::vector<ComplexMatrix>& ms) {
  Json doc = io::envelope("states", static_cast<int>(ms[0].rows()));
  Json payload = Json::array();
  for (const auto& m : ms) payload.push_back(io::matrix_to_json(m));
  doc["payload"] = payload;
  return doc;
}

const char* kZeroPlus = R"({"schema": "setcoh/1", "kind": "states", "dim": 2,
  "payload": [[[1, 0], [0, 0]], [[0.5, 0.5], [0.5, 0.5]]]})";

TEST(IoTest, MatrixRoundTrip) {
  const ComplexMatrix m = random_density(3, 3).matrix();
  const ComplexMatrix back = io::matrix_from_json(io::matrix_to_json(m), 3, "m");
  EXPECT_EQ(max_abs(back - m), 0.0);
}

TEST(IoTest, RationalEntries) {
  EXPECT_EQ(io::rational_from_json(Json("2/6"), "x"), Rational(1, 3));
  EXPECT_EQ(io::rational_from_json(Json(" -3 / 4 "), "x"), Rational(-3, 4));
  EXPECT_EQ(io::rational_to_string(Rational(4, 2)), "2");
  EXPECT_THROW(io::rational_from_json(Json("1/0"), "x"), Error);
  EXPECT_THROW(io::rational_from_json(Json("a/2"), "x"), Error);
}

TEST(IoTest, ErrorsNameTheField) {
  const Json doc = Json::parse(R"({"kind": "states", "dim": 2,
    "payload": [[[1, 0], [0, "x"]]]})");
  try {
    io::states_from(io::parse_input(doc));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedInput);
    EXPECT_NE(std::string(e.what()).find("payload[0][1][1]"), std::string::npos) << e.what();
  }
}

TEST(IoTest, SyntaxErrorsReportLineAndColumn) {
  try {
    io::parse_json("{\n  \"kind\": ,\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(IoTest, UnknownKindAndSchema) {
  EXPECT_THROW(io::parse_input(Json::parse(R"({"kind": "x", "dim": 2, "payload": []})")), Error);
  EXPECT_THROW(io::parse_input(Json::parse(
                   R"({"schema": "other", "kind": "states", "dim": 2, "payload": []})")),
               Error);
}

TEST(CliTest, MeanRobustnessOfZeroAndPlus) {
  const std::string path = write_temp("zp.json", kZeroPlus);
  const CliRun r = run({"setcoh", path, "--measure", "r1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["schema"], "setcoh/1");
  EXPECT_EQ(j["kind"], "result");
  EXPECT_NEAR(j["value"].get<double>(), 0.5, 1e-9);
  EXPECT_NEAR(j["fixed_frame_value"].get<double>(), j["value"].get<double>(), 1e-9);
}

TEST(CliTest, ReportedFrameReproducesTheValue) {
  const std::vector<ComplexMatrix> ms = {random_density(1, 2).matrix(),
                                         random_pure_state(2, 2).matrix(),
                                         random_density(3, 2).matrix()};
  const std::string path = write_temp("three.json", states_doc(ms).dump());
  const CliRun r = run({"setcoh", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  const ComplexMatrix u = io::matrix_from_json(j["frame"], 2, "frame");
  double worst = 0.0;
  for (const auto& m : ms) worst = std::max(worst, oracle::qubit_robustness(u * m * u.adjoint()));
  EXPECT_NEAR(worst, j["value"].get<double>(), 1e-8);
  // Witness pairing of the certificate closes on the value.
  const Json& cert = j["certificate"];
  double pairing = 0.0;
  for (size_t k = 0; k < ms.size(); ++k) {
    const ComplexMatrix y = io::matrix_from_json(cert["witness"][k], 2, "w");
    pairing += (u * ms[k] * u.adjoint() * y).trace().real();
  }
  EXPECT_NEAR(pairing, 1.0 + j["value"].get<double>(), 1e-6);
}

TEST(CliTest, SameSeedSameOutput) {
  const std::vector<ComplexMatrix> ms = {random_density(5, 3).matrix(),
                                         random_density(6, 3).matrix()};
  const std::string path = write_temp("qutrit.json", states_doc(ms).dump());
  const CliRun a = run({"setcoh", path, "--restarts", "3", "--seed", "9"});
  const CliRun b = run({"setcoh", path, "--restarts", "3", "--seed", "9"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, GameOnPlusState) {
  const std::string path = write_temp(
      "plus.json",
      R"({"kind": "states", "dim": 2, "payload": [[[0.5, 0.5], [0.5, 0.5]]]})");
  const CliRun r = run({"game", path, "--frame", "identity"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["ratio"].get<double>(), 2.0, 1e-6);
}

TEST(CliTest, ConfigsForFourStates) {
  const CliRun r = run({"configs", "--n", "4", "--restarts", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_NEAR(j["value"].get<double>(), std::sqrt(0.5), 1e-4);
  EXPECT_NEAR(j["reference_value"].get<double>(), std::sqrt(0.5), 1e-9);
}

TEST(CliTest, ExactDecomposition) {
  const std::string path = write_temp("staircase.json", R"({"kind": "povm", "dim": 4,
    "payload": [
      [[1, 0, 0, 0], [0, "1/3", 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
      [[0, 0, 0, 0], [0, "2/3", 0, 0], [0, 0, "2/3", 0], [0, 0, 0, 0]],
      [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, "1/3", 0], [0, 0, 0, 1]]]})");
  const CliRun r = run({"decompose", path, "--exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_TRUE(j["verified"].get<bool>());
  const Json& terms = j["decompositions"][0]["terms"];
  ASSERT_EQ(terms.size(), 3u);
  for (const auto& t : terms) EXPECT_EQ(t["weight"], "1/3");
  EXPECT_EQ(terms[0]["assignment"], Json::parse("[0, 0, 1, 2]"));
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--version"}).code, cli::kExitOk);
  const std::string bad = write_temp("bad.json", "{\"kind\": ");
  EXPECT_EQ(run({"setcoh", bad}).code, cli::kExitValidation);
  const std::string trace = write_temp(
      "trace.json", R"({"kind": "states", "dim": 2, "payload": [[[0.5, 0], [0, 0.2]]]})");
  const CliRun v = run({"validate", trace});
  EXPECT_EQ(v.code, cli::kExitValidation);
  EXPECT_FALSE(v.json()["valid"].get<bool>());
  EXPECT_EQ(v.json()["error"], "bad-trace");
  const std::string coherent = write_temp(
      "coherent.json",
      R"({"kind": "povm", "dim": 2, "payload": [[[0.5, 0.5], [0.5, 0.5]], [[0.5, -0.5], [-0.5, 0.5]]]})");
  EXPECT_EQ(run({"decompose", coherent, "--frame", "identity"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"setcoh", "/nonexistent/file.json"}).code, cli::kExitValidation);
}

TEST(CliTest, OutputFileGetsTheDocument) {
  const std::string in = write_temp("zp2.json", kZeroPlus);
  const std::string out = ::testing::TempDir() + "setcoh_result.json";
  const CliRun r = run({"setcoh", in, "--output", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = io::read_json_file(out);
  EXPECT_EQ(j["tool"], "setcoh");
  EXPECT_NO_THROW(io::frame_from(j));
}

}  // namespace
}  // namespace setcoh

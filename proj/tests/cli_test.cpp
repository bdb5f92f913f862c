// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"

namespace violin::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "violin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() / "violin_cli_test";
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }
  fs::path root_;
};

TEST_F(CliTest, GenIsReproducible) {
  for (const char* name : {"a", "b"}) {
    const auto r = invoke({"gen", "--out", (root_ / name).string(), "--scale", "0.003", "--seed",
                           "7", "--resolution", "32"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(slurp(root_ / "a" / "manifest.jsonl"), slurp(root_ / "b" / "manifest.jsonl"));
  int files = 0;
  for (const auto& f : fs::recursive_directory_iterator(root_ / "a")) {
    if (!f.is_regular_file()) continue;
    ++files;
    const auto rel = fs::relative(f.path(), root_ / "a");
    EXPECT_EQ(slurp(f.path()), slurp(root_ / "b" / rel)) << rel;
  }
  EXPECT_GT(files, 10);

  const auto again = invoke({"gen", "--out", (root_ / "a").string(), "--scale", "0.003"});
  EXPECT_EQ(again.code, 1);
  EXPECT_EQ(Json::parse(again.err)["error"], "output-collision");
}

TEST_F(CliTest, EvalGroundTruthImagesScoresZero) {
  const auto ds = root_ / "ds";
  ASSERT_EQ(invoke({"gen", "--out", ds.string(), "--scale", "0.003", "--resolution", "32"}).code, 0);
  const auto split = invoke({"split", "--manifest", (ds / "manifest.jsonl").string(), "--strategy",
                             "prompt", "--strategy", "hue1"});
  ASSERT_EQ(split.code, 0) << split.err;
  EXPECT_GT(Json::parse(split.out)["skipped"]["hue1"].get<int>(), 0);

  const auto r = invoke({"eval", "--manifest", (ds / "manifest.jsonl").string(), "--images",
                         (ds / "gt").string(), "--resolution", "32", "--model", "oracle",
                         "--report", (root_ / "report").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["coverage"], 1.0);
  for (const auto& a : j["aggregates"]) {
    EXPECT_EQ(a["pre_mean"], 0.0) << a.dump();
    EXPECT_EQ(a["pur_mean"], 0.0) << a.dump();
  }
  EXPECT_TRUE(fs::exists(root_ / "report" / "report.csv"));
  EXPECT_TRUE(fs::exists(root_ / "report" / "report.md"));
  EXPECT_TRUE(fs::exists(root_ / "report" / "report.jsonl"));
}

TEST_F(CliTest, MetricsPair) {
  const auto r = invoke({"metrics", "--pair", "#FF0000", "#000000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["raw"]["rgb_ed"].get<double>(), 255.0);
  EXPECT_GT(j["pre_mean"].get<double>(), 0.0);
  EXPECT_EQ(Json::parse(invoke({"metrics", "--pair", "#123456", "#123456"}).out)["pre_mean"], 0.0);
}

TEST_F(CliTest, ProbeSpatialWithGroundTruth) {
  const auto r = invoke({"probe", "--family", "spatial", "--ground-truth"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("measured_fraction"), std::string::npos);
}

TEST_F(CliTest, ErrorsAreJson) {
  const auto bad_hex = invoke({"metrics", "--pair", "#12G456", "#000000"});
  EXPECT_EQ(bad_hex.code, 1);
  EXPECT_EQ(Json::parse(bad_hex.err)["error"], "malformed-hex");

  const auto usage = invoke({"eval", "--bogus"});
  EXPECT_EQ(usage.code, 2);
  EXPECT_EQ(Json::parse(usage.err)["error"], "usage");

  const auto no_source = invoke({"metrics"});
  EXPECT_EQ(no_source.code, 1);
  EXPECT_TRUE(Json::parse(no_source.err).contains("message"));
}

}  // namespace
}  // namespace violin::cli

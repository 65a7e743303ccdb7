#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ELASTICA_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("maxInvariantDrift", 0) == 0) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("elastica_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Cli, IntegrateCircleCloses) {
  const auto r = run("integrate --k 1 --P 1,0,1 --s-span 6.283185307179586 --samples 101");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 101u);
  // columns: s, x, u_1, y, ...
  EXPECT_NEAR(rows.back()[0], 6.283185307179586, 1e-15);
  EXPECT_NEAR(rows.front()[1], rows.back()[1], 1e-8);
  EXPECT_NEAR(rows.front()[2], rows.back()[2], 1e-8);
}

TEST(Cli, IntegrateVerticalLine) {
  const auto r = run("integrate --k 2 --P 0,1,0,0 --s-span 5 --samples 11");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 11u);
  for (const auto& row : rows) EXPECT_EQ(row[1], 0.0);
  EXPECT_NEAR(rows.back()[2], 5.0, 1e-12);
}

TEST(Cli, WritesFileAndReportsDrift) {
  const auto dir = scratch("drift");
  const auto path = dir / "arc.csv";
  const auto r = run("integrate --k 2 --P 0.6,0.8,0.3,1 --s-span 20 --out " + path.string());
  ASSERT_EQ(r.code, 0);
  ASSERT_TRUE(fs::exists(path));
  ASSERT_EQ(r.out.rfind("maxInvariantDrift ", 0), 0u);
  EXPECT_LT(std::stod(r.out.substr(18)), 1e-8);
}

TEST(Cli, ConfigErrorsExitOne) {
  EXPECT_EQ(run("integrate --k 1 --P 1,0,1 --rel-tol 0").code, 1);
  EXPECT_EQ(run("integrate --k 1 --P 1,0").code, 1);
  EXPECT_EQ(run("integrate --k 1 --P 1,x,1").code, 1);
  EXPECT_EQ(run("integrate --k 1").code, 1);
  EXPECT_EQ(run("synthesize --k 2 --p 1 --anchor-duds 1.5").code, 1);
  EXPECT_EQ(run("synthesize --k 1 --p 0,1").code, 1);
  EXPECT_EQ(run("integrate --no-such-flag").code, 1);
  EXPECT_EQ(run("nonsense").code, 1);
  EXPECT_EQ(run("integrate --format xml --k 1 --P 1,0,1").code, 1);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = scratch("config");
  const auto cfg = dir / "spec.json";
  std::ofstream(cfg) << R"({"k": 2, "p": [0, 1], "anchor": {"x": 0.0, "duds": 0.0}, "sigma": 1, "s_span": 5})";
  const auto r = run("synthesize --config " + cfg.string() + " --samples 7");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(csv_rows(r.out).size(), 7u);
  std::ofstream(dir / "bad.json") << R"({"k": 2, "unknown": 1})";
  EXPECT_EQ(run("synthesize --config " + (dir / "bad.json").string()).code, 1);
}

TEST(Cli, ClassifyLine) {
  const auto r = run("classify --k 1 --F 0,1");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["intervals"].size(), 1u);
  EXPECT_EQ(doc["intervals"][0]["class"], "Periodic");
  EXPECT_NEAR(doc["intervals"][0]["L"].get<double>(), 6.283185307179586, 1e-9);
}

TEST(Cli, PeriodFromCurvature) {
  // p = 1 anchored at 0 gives F = x
  const auto r = run("period --k 1 --p 1");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["L"].get<double>(), 6.283185307179586, 1e-9);
  EXPECT_NEAR(doc["tau"].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(doc["action"].get<double>(), 3.141592653589793, 1e-9);
}

TEST(Cli, Casimirs) {
  const auto r = run("casimirs --k 2");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["k"], 2);
  ASSERT_EQ(doc["casimirs"].size(), 2u);
  EXPECT_EQ(doc["casimirs"][0]["degree"], 1);
  EXPECT_EQ(doc["casimirs"][1]["degree"], 2);
}

TEST(Cli, GalleryThreeCurves) {
  const auto dir = scratch("gallery");
  const auto r = run("gallery --figure1 --out " + dir.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream mf(dir / "manifest.json");
  ASSERT_TRUE(mf.good());
  const auto manifest = nlohmann::json::parse(mf);
  ASSERT_EQ(manifest["curves"].size(), 3u);
  for (const auto& c : manifest["curves"]) {
    const auto svg = dir / c["svg"].get<std::string>();
    ASSERT_TRUE(fs::exists(svg)) << svg;
    EXPECT_GT(fs::file_size(svg), 100u);
  }
}

TEST(Cli, SynthesizeSvg) {
  const auto dir = scratch("svg");
  const auto path = dir / "arc.svg";
  ASSERT_EQ(run("synthesize --k 2 --p 0,1 --s-span 10 --format svg --out " + path.string()).code, 0);
  std::ifstream f(path);
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("<svg"), std::string::npos);
  EXPECT_NE(text.find("<path"), std::string::npos);
}

TEST(Cli, VerifyPasses) {
  const auto r = run("verify --seed 11");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("seed 11"), std::string::npos);
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

}  // namespace

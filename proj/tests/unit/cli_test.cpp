#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include "json.hpp"

#include "cli/commands.hpp"

namespace motifx::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

const std::string kData = MOTIFX_TEST_DATA;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "motifx");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("motifx_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
  }

  std::string uniform_table(std::size_t n, double p, bool directed) {
    Json probs = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < n; ++j) row.push_back(i == j ? 0.0 : p);
      probs.push_back(row);
    }
    const Json d = {{"type", "table"}, {"directed", directed}, {"probs", probs}};
    return write("table_" + std::to_string(n) + ".json", d.dump());
  }

  fs::path dir_;
};

Json parse(const Result& r) { return Json::parse(r.out); }

TEST_F(CliTest, CountWorkedExample) {
  const Result r = run_cli({"count", "--graph", kData + "/path_graph.txt",
                            "--motif", kData + "/edge_isolated_motif.json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = parse(r);
  EXPECT_EQ(j["ordered"], 4);
  EXPECT_EQ(j["set"], 2);
  EXPECT_EQ(j["aut"], 2);
  EXPECT_EQ(j["identity_holds"], true);
  EXPECT_EQ(r.out.rfind(R"({"ordered":4,"set":2,"aut":2,"identity_holds":true,)", 0), 0u);
  EXPECT_EQ(j["provenance"]["command"], "count");
  EXPECT_TRUE(j["provenance"]["inputs"].contains("graph"));
}

TEST_F(CliTest, CountEmptyGraphSingleEdge) {
  const std::string g = write("empty.txt", "%nodes a b c\n");
  const std::string m =
      write("edge.json", R"({"k":2,"directed":false,"matrix":[[0,1],[1,0]]})");
  const Result r = run_cli({"count", "--graph", g, "--motif", m});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(parse(r)["ordered"], 0);
}

TEST_F(CliTest, CountTriangleOnK3) {
  const std::string g = write("k3.txt", "a b\nb c\nc a\n");
  const Result r =
      run_cli({"count", "--graph", g, "--motif", kData + "/triangle_motif.json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = parse(r);
  EXPECT_EQ(j["ordered"], 6);
  EXPECT_EQ(j["set"], 1);
  EXPECT_EQ(j["aut"], 6);
}

TEST_F(CliTest, CountDuplicateEdgeWarnsButSucceeds) {
  const std::string g = write("dup.txt", "%nodes a b c d\na b\nb a\nb c\n");
  const Result r =
      run_cli({"count", "--graph", g, "--motif", kData + "/edge_isolated_motif.json"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(parse(r)["ordered"], 4);
}

TEST_F(CliTest, CountCsv) {
  const Result r = run_cli({"count", "--graph", kData + "/path_graph.txt", "--motif",
                            kData + "/edge_isolated_motif.json", "--format", "csv"});
  ASSERT_EQ(r.code, kOk);
  std::istringstream lines(r.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header.rfind("ordered,set,aut,identity_holds,", 0), 0u) << header;
  EXPECT_EQ(row.rfind("4,2,2,true,", 0), 0u) << row;
  EXPECT_NE(header.find("provenance.command"), std::string::npos);
}

TEST_F(CliTest, CountErrorClasses) {
  const std::string motif = kData + "/edge_isolated_motif.json";
  EXPECT_EQ(run_cli({"count", "--graph", write("bad.txt", "a b c\n"), "--motif", motif})
                .code,
            kInputError);
  EXPECT_EQ(run_cli({"count", "--graph", write("loop.txt", "a a\n"), "--motif", motif})
                .code,
            kValidation);
  EXPECT_EQ(run_cli({"count", "--graph", (dir_ / "missing.txt").string(), "--motif",
                     motif})
                .code,
            kInputError);
  EXPECT_EQ(run_cli({"count", "--graph", kData + "/path_graph.txt", "--motif",
                     kData + "/directed_edge_motif.json"})
                .code,
            kValidation);
  EXPECT_EQ(run_cli({"count", "--graph", kData + "/path_graph.txt", "--motif",
                     write("m.json", R"({"k":2,"directed":false,"matrix":[[0,2],[2,0]]})")})
                .code,
            kValidation);
  EXPECT_EQ(run_cli({"count", "--motif", motif}).code, kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kUsage);
}

TEST_F(CliTest, ArityLimitAndOverride) {
  Json matrix = Json::array();
  for (int i = 0; i < 6; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 6; ++j) row.push_back(0);
    matrix.push_back(row);
  }
  const std::string m =
      write("k6.json", Json{{"k", 6}, {"directed", false}, {"matrix", matrix}}.dump());
  const std::string g = write("g.txt", "%nodes a b c d e f\n");
  const Result limited = run_cli({"count", "--graph", g, "--motif", m});
  EXPECT_EQ(limited.code, kSizeLimit);
  const Result overridden =
      run_cli({"count", "--graph", g, "--motif", m, "--max-arity", "6"});
  ASSERT_EQ(overridden.code, kOk) << overridden.err;
  EXPECT_NE(overridden.err.find("note:"), std::string::npos);
  EXPECT_EQ(parse(overridden)["ordered"], 720);
}

TEST_F(CliTest, ExpectedTableDecoder) {
  const Result r = run_cli({"expected", "--decoder", kData + "/table_two_node.json",
                            "--motif", kData + "/directed_edge_motif.json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = parse(r);
  EXPECT_NEAR(j["mean"].get<double>(), 0.54, 1e-12);
  EXPECT_EQ(j["std_error"].get<double>(), 0.0);
  EXPECT_EQ(j["method"], "conditional");
  EXPECT_EQ(j["provenance"]["seed"], 0);
}

TEST_F(CliTest, ExpectedClosedFormTriangle) {
  const Result r = run_cli({"expected", "--decoder", uniform_table(10, 0.1, false),
                            "--motif", kData + "/triangle_motif.json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NEAR(parse(r)["mean"].get<double>(), 0.72, 1e-12);
}

TEST_F(CliTest, ExpectedSingleSampleIsReproducible) {
  const std::string d = write(
      "ip.json",
      R"({"type":"inner_product","directed":false,"dim":2,"bias":-0.5,"embeddings":[[0.2,0.1],[0.4,-0.3],[-0.1,0.5],[0.3,0.3]]})");
  const std::vector<std::string> args = {"expected", "--decoder", d, "--motif",
                                         kData + "/edge_isolated_motif.json", "--samples",
                                         "1", "--seed", "7"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse(a)["samples"], 1);
}

TEST_F(CliTest, ExpectedLatentsFileAndDimensionMismatch) {
  const std::string d = write(
      "ip.json",
      R"({"type":"inner_product","directed":false,"dim":2,"bias":0,"embeddings":[[0,0],[0,0],[0,0]]})");
  const std::string good = write("z.txt", "0.5 -1\n2 3\n");
  const Result r = run_cli({"expected", "--decoder", d, "--motif",
                            kData + "/triangle_motif.json", "--latents", good});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = parse(r);
  EXPECT_EQ(j["samples"], 2);
  EXPECT_NEAR(j["mean"].get<double>(), 6 * 0.125, 1e-12);
  EXPECT_NE(j["provenance"]["inputs"]["latents"], "prior:standard_normal");

  const std::string bad = write("z3.txt", "1 2 3\n");
  EXPECT_EQ(run_cli({"expected", "--decoder", d, "--motif",
                     kData + "/triangle_motif.json", "--latents", bad})
                .code,
            kValidation);
}

TEST_F(CliTest, ExpectedNaiveBlock) {
  const Result r =
      run_cli({"expected", "--decoder", kData + "/table_two_node.json", "--motif",
               kData + "/directed_edge_motif.json", "--graphs-per-z", "1000"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json naive = parse(r)["naive"];
  EXPECT_EQ(naive["method"], "naive");
  const double se = naive["std_error"].get<double>();
  EXPECT_GT(se, 0.0);
  EXPECT_LE(std::abs(naive["mean"].get<double>() - 0.54), 4 * se);
}

TEST_F(CliTest, VerifyPasses) {
  const Result r = run_cli({"verify", "--decoder", kData + "/half_four_node.json",
                            "--motif", kData + "/edge_isolated_motif.json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = parse(r);
  EXPECT_NEAR(j["fast_path"].get<double>(), 3.0, 1e-12);
  EXPECT_NEAR(j["oracle"].get<double>(), 3.0, 1e-12);
  EXPECT_LE(j["abs_diff"].get<double>(), 1e-9);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["links"], 6);
  EXPECT_EQ(j["conjecture"]["aut"], 2);
  EXPECT_NEAR(j["conjecture"]["expected_set"].get<double>(), 1.5, 1e-12);
  EXPECT_EQ(j["conjecture"]["pass"], true);
  EXPECT_TRUE(j["conjecture"]["counterexample"].is_null());
}

TEST_F(CliTest, VerifyTooLargeReportsLinkCount) {
  const Result r = run_cli({"verify", "--decoder", uniform_table(8, 0.2, false),
                            "--motif", kData + "/triangle_motif.json"});
  EXPECT_EQ(r.code, kSizeLimit);
  EXPECT_NE(r.err.find("L = 28"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, VerifyOverridePrintsCost) {
  const Result r =
      run_cli({"verify", "--decoder", uniform_table(7, 0.2, false), "--motif",
               kData + "/triangle_motif.json", "--max-oracle-links", "21", "--trials",
               "10"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.err.find("2^21"), std::string::npos) << r.err;
  EXPECT_NEAR(parse(r)["oracle"].get<double>(), 210 * 0.008, 1e-9);
}

TEST_F(CliTest, VerifyCorruptedProbabilityIsValidationError) {
  const std::string d = write(
      "bad.json", R"({"type":"table","directed":true,"probs":[[0,1.2],[0.6,0]]})");
  const Result r =
      run_cli({"verify", "--decoder", d, "--motif", kData + "/directed_edge_motif.json"});
  EXPECT_EQ(r.code, kValidation);
  EXPECT_NE(r.err.find("1.2"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, SignificanceObservedAtMeanScoresZero) {
  // h_i = 1 + z, so p = logistic((1 + z)^2 - 3); the two latents give
  // p = 1/4 and 5/12 on every pair and an expected single-edge count of 2.
  const double bias = -3.0;
  std::string latents;
  for (double p : {0.25, 5.0 / 12.0}) {
    char line[64];
    std::snprintf(line, sizeof line, "%.17g\n",
                  std::sqrt(std::log(p / (1.0 - p)) - bias) - 1.0);
    latents += line;
  }
  const std::string d = write(
      "ip.json",
      R"({"type":"inner_product","directed":false,"dim":1,"bias":-3,"embeddings":[[1],[1],[1]]})");
  const std::string m =
      write("edge.json", R"({"k":2,"directed":false,"matrix":[[0,1],[1,0]]})");
  const std::string g = write("g.txt", "%nodes a b c\na b\n");
  const Result r = run_cli({"significance", "--graph", g, "--decoder", d, "--motif", m,
                            "--mode", "conditional-spread", "--latents",
                            write("z.txt", latents)});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = parse(r);
  EXPECT_EQ(j["mode"], "conditional-spread");
  EXPECT_EQ(j["observed"].get<double>(), 2.0);
  EXPECT_NEAR(j["expected_mean"].get<double>(), 2.0, 1e-12);
  ASSERT_TRUE(j["score_defined"].get<bool>());
  EXPECT_NEAR(j["score"].get<double>(), 0.0, 1e-10);
}

TEST_F(CliTest, SignificanceTotalVarianceDefault) {
  const Result r = run_cli({"significance", "--graph", kData + "/path_graph.txt",
                            "--decoder", kData + "/half_four_node.json", "--motif",
                            kData + "/edge_isolated_motif.json", "--samples", "4",
                            "--graphs-per-z", "2500", "--seed", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = parse(r);
  EXPECT_EQ(j["mode"], "total-variance");
  EXPECT_EQ(j["samples"], 10000);
  EXPECT_EQ(j["graphs_per_z"], 2500);
  // Exact: (4 - 3) / sqrt(4.5).
  EXPECT_NEAR(j["score"].get<double>(), 0.4714045207910317, 3.0 / std::sqrt(10000.0));
}

TEST_F(CliTest, SignificanceConditionalSpreadOnTableIsFlagged) {
  const Result r = run_cli({"significance", "--graph", kData + "/path_graph.txt",
                            "--decoder", kData + "/half_four_node.json", "--motif",
                            kData + "/edge_isolated_motif.json", "--mode",
                            "conditional-spread"});
  EXPECT_EQ(r.code, kNumericalFlag);
  const Json j = parse(r);
  EXPECT_TRUE(j["score"].is_null());
  EXPECT_EQ(j["score_defined"], false);
  EXPECT_EQ(j["mode"], "conditional-spread");
  EXPECT_NEAR(j["expected_mean"].get<double>(), 3.0, 1e-12);
  EXPECT_NE(r.err.find("undefined"), std::string::npos);
}

TEST_F(CliTest, SignificanceSizeMismatch) {
  const Result r = run_cli({"significance", "--graph", kData + "/path_graph.txt",
                            "--decoder", uniform_table(5, 0.5, false), "--motif",
                            kData + "/edge_isolated_motif.json"});
  EXPECT_EQ(r.code, kValidation);
}

TEST_F(CliTest, SignificanceBadModeIsUsageError) {
  EXPECT_EQ(run_cli({"significance", "--graph", kData + "/path_graph.txt",
                     "--decoder", kData + "/half_four_node.json", "--motif",
                     kData + "/edge_isolated_motif.json", "--mode", "zscore"})
                .code,
            kUsage);
}

TEST_F(CliTest, AutListsPermutations) {
  const Result r = run_cli({"aut", "--motif", kData + "/edge_isolated_motif.json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = parse(r);
  EXPECT_EQ(j["aut"], 2);
  EXPECT_EQ(j["k"], 3);
  EXPECT_EQ(j["automorphisms"], Json::parse("[[0,1,2],[1,0,2]]"));
}

TEST_F(CliTest, HelpDocumentsExitCodes) {
  const Result r = run_cli({"--help"});
  EXPECT_EQ(r.code, kOk);
  for (const char* line : {"0  success", "2  input error", "3  validation error",
                           "4  size limit", "5  numerical flag"}) {
    EXPECT_NE(r.out.find(line), std::string::npos) << line;
  }
}

TEST_F(CliTest, ThreadsDoNotChangeOutput) {
  const std::string d = write(
      "ip.json",
      R"({"type":"inner_product","directed":true,"dim":2,"bias":-0.2,"embeddings":[[0.2,0.1],[0.4,-0.3],[-0.1,0.5],[0.3,0.3],[1,0]]})");
  const std::string m = write(
      "m.json", R"({"k":3,"directed":true,"matrix":[[0,1,0],[0,0,1],[1,0,0]]})");
  const std::string g = write("g.txt", "%nodes a b c d e\na b\nb c\nc a\nd e\n");
  const std::vector<std::vector<std::string>> commands = {
      {"count", "--graph", g, "--motif", m, "--directed"},
      {"expected", "--decoder", d, "--motif", m, "--samples", "50", "--graphs-per-z",
       "20", "--seed", "11"},
      {"verify", "--decoder", d, "--motif", m, "--seed", "11", "--trials", "30"},
      {"significance", "--graph", g, "--directed", "--decoder", d, "--motif", m,
       "--samples", "20", "--graphs-per-z", "20", "--seed", "11"},
  };
  for (const auto& base : commands) {
    std::vector<std::string> one = base;
    one.insert(one.end(), {"--threads", "1"});
    std::vector<std::string> many = base;
    many.insert(many.end(), {"--threads", "4"});
    const Result a = run_cli(one);
    const Result b = run_cli(many);
    const Result c = run_cli(many);
    ASSERT_EQ(a.code, kOk) << base.front() << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << base.front();
    EXPECT_EQ(b.out, c.out) << base.front();
  }
}

#ifdef MOTIFX_BINARY
int shell_status(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = MOTIFX_BINARY;
  const std::string quiet = " >/dev/null 2>&1";
  EXPECT_EQ(shell_status(bin + " count --graph " + kData + "/path_graph.txt --motif " +
                         kData + "/edge_isolated_motif.json" + quiet),
            0);
  EXPECT_EQ(shell_status(bin + " count" + quiet), 1);
  EXPECT_EQ(shell_status(bin + " count --graph " + write("bad.txt", "x\n") +
                         " --motif " + kData + "/edge_isolated_motif.json" + quiet),
            2);
  EXPECT_EQ(shell_status(bin + " verify --decoder " + uniform_table(8, 0.1, false) +
                         " --motif " + kData + "/triangle_motif.json" + quiet),
            4);
}
#endif

}  // namespace
}  // namespace motifx::cli

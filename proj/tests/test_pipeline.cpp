#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "sparsesos/generators.hpp"
#include "sparsesos/parser.hpp"
#include "sparsesos/pipeline.hpp"

using namespace sparsesos;

namespace {

const std::string kData = SPARSESOS_DATA_DIR;
const std::string kIsSos = SPARSESOS_IS_SOS;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = "\"" + kIsSos + "\" " + args + " 2>/dev/null";
  Run r{-1, {}};
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return "\"" + kData + "/" + name + "\""; }

}  // namespace

TEST(Pipeline, VerdictsInProcess) {
  EXPECT_EQ(certify(parse("x^2 + 2*x*y + y^2")).report.verdict, Verdict::Sos);
  EXPECT_EQ(certify(parse("x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1")).report.verdict, Verdict::Unknown);
  EXPECT_EQ(certify(parse("x^3 + 1")).report.verdict, Verdict::NotNonnegative);
  EXPECT_EQ(certify(parse("x - x")).report.verdict, Verdict::Sos);
  // The x*y term joins x and y into one block.
  EXPECT_EQ(certify(parse("x^2 + x*y + y^2 + 1"), {Extension::Components}).report.verdict, Verdict::Sos);
}

TEST(Pipeline, TwoVarQuarticBothExtensions) {
  const auto f = parse_file(kData + "/quartic2.txt");
  PipelineOptions opt;
  opt.basis = BasisMode::Full;
  for (auto ext : {Extension::Components, Extension::Chordal, Extension::Dense}) {
    opt.extension = ext;
    const auto r = certify(f, opt);
    EXPECT_EQ(r.report.verdict, Verdict::Sos) << to_string(ext);
    EXPECT_LE(r.report.residual, 1e-6);
  }
}

TEST(Pipeline, MissingFileIsInputError) {
  const auto r = run_is_sos(kData + "/does-not-exist.txt");
  EXPECT_EQ(r.report.verdict, Verdict::InputError);
  EXPECT_EQ(r.report.exit_code(), 3);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run(data("quartic2.txt")).code, 0);
  EXPECT_EQ(run(data("motzkin.txt")).code, 1);
  EXPECT_EQ(run(data("odd.txt")).code, 2);
  EXPECT_EQ(run(data("does-not-exist.txt")).code, 3);
  EXPECT_EQ(run("--extension bogus " + data("quartic2.txt")).code, 3);
  EXPECT_EQ(run(data("quartic2.txt") + " " + data("odd.txt")).code, 2);
}

TEST(Cli, SyntaxErrorIsInputError) {
  const auto path = std::filesystem::temp_directory_path() / "sparsesos_bad_input.txt";
  std::ofstream(path) << "x^2 + * y";
  EXPECT_EQ(run("\"" + path.string() + "\"").code, 3);
  std::filesystem::remove(path);
}

TEST(Cli, TextReportShowsCertificate) {
  const auto r = run(data("example.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("result:    sos"), std::string::npos);
  EXPECT_NE(r.out.find(")^2"), std::string::npos);
  EXPECT_NE(r.out.find("#block:"), std::string::npos);
}

TEST(Cli, StatsJson) {
  const auto r = run("--stats --basis full --extension chordal " + data("quartic2.txt"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"input", "nvars", "nsupp", "basis_size", "strategy", "blocks", "block_multiset", "status",
                        "solver_status", "t_star", "residual", "iterations", "exit_code", "times"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["nsupp"], 5);
  EXPECT_EQ(j["basis_size"], 6);
  EXPECT_EQ(j["blocks"], "1 x 3, 2 x 2");
  EXPECT_EQ(j["status"], "sos");
  EXPECT_EQ(j["exit_code"], 0);
  EXPECT_LE(j["residual"].get<double>(), 1e-6);
}

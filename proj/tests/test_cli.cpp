#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "regret_frontier/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(REGRET_FRONTIER_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path workdir() {
  const auto dir = fs::temp_directory_path() / "regret_frontier_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, TreeExactPrintsClosedForm) {
  const auto r = run("bound tree-exact --depth 3 --m 2 --eps 0.1 --kappa 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(regret_frontier::Json::parse(r.out)["value"].get<double>(), 245.0);
}

TEST(Cli, InvalidSpecIsInputError) {
  EXPECT_EQ(run("gen tree --depth 3 --m 2 --eps 0.1 --kappa 0.15").code, 2);
  EXPECT_EQ(run("bound tree-exact --eps -1").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
}

TEST(Cli, FullSupportOnTreeIsPreconditionFailure) {
  const auto path = workdir() / "tree.json";
  ASSERT_EQ(run("gen tree --out " + path.string()).code, 0);
  EXPECT_EQ(run("bound full-support --mdp " + path.string()).code, 3);
  const auto nd = run("bound no-dynamics --known-dynamics --mdp " + path.string());
  ASSERT_EQ(nd.code, 0);
  EXPECT_EQ(regret_frontier::Json::parse(nd.out)["value"].get<double>(), 60.0);
}

TEST(Cli, EmptyTraceDirectory) {
  const auto dir = workdir() / "empty";
  fs::remove_all(dir);
  fs::create_directories(dir);
  EXPECT_EQ(run("report --traces " + dir.string()).code, 2);
}

TEST(Cli, SimulateReportReplay) {
  const auto dir = workdir() / "sim";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto mdp = dir / "k.json";
  ASSERT_EQ(run("gen tree --eps 0.05 --kappa 0.2 --out " + mdp.string()).code, 0);
  const auto csv = dir / "trace.csv";
  ASSERT_EQ(run("simulate --mdp " + mdp.string() + " --episodes 64 --seeds 0..2 --out " +
                csv.string())
                .code,
            0);
  ASSERT_TRUE(fs::exists(dir / "trace.csv.manifest.json"));
  const auto rows = regret_frontier::read_trace_csv(csv);
  EXPECT_EQ(rows.size(), 3U * 64U);

  const auto rep = run("report --traces " + dir.string() + " --mdp " + mdp.string());
  ASSERT_EQ(rep.code, 0);
  EXPECT_TRUE(regret_frontier::Json::parse(rep.out).contains("log_fit"));

  const auto again = dir / "again.csv.out";
  EXPECT_EQ(run("replay --manifest " + (dir / "trace.csv.manifest.json").string() + " --out " +
                again.string())
                .code,
            0);
  EXPECT_EQ(regret_frontier::read_file(again), regret_frontier::read_file(csv));
}

TEST(Cli, Selftest) {
  const auto r = run("selftest");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

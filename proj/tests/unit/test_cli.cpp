#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run_cli(const std::string& args) {
#ifdef HOPPER_CLI
  const std::string command = std::string(HOPPER_CLI) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return o;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) o.out.append(buffer, n);
  const int status = ::pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
#else
  (void)args;
  return {};
#endif
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "hopper-cli-test";
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
#ifndef HOPPER_CLI
    GTEST_SKIP() << "hopper binary not built";
#endif
  }
};

TEST_F(Cli, VerifyDataFile) {
  const Outcome o = run_cli("verify --json " HOPPER_DATA_DIR "/prismatoid_24.txt");
  ASSERT_EQ(o.code, 0);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j.at("width"), 6);
  EXPECT_EQ(j.at("decks"), nlohmann::json({12, 12}));
  const Outcome text = run_cli("verify " HOPPER_DATA_DIR "/prismatoid_24.txt");
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("width 6"), std::string::npos);
}

TEST_F(Cli, ErrorExitCodes) {
  const fs::path dir = scratch();
  write(dir / "garbage.txt", "this is not a polytope\n");
  write(dir / "flat.txt", "4 2\n0 0\n1 1\n2 2\n3 3\n");
  EXPECT_EQ(run_cli("verify " + (dir / "garbage.txt").string()).code, 3);
  EXPECT_EQ(run_cli("verify " + (dir / "flat.txt").string()).code, 4);
  write(dir / "bad.json", R"({"scenarioo": "hirsch"})");
  EXPECT_EQ(run_cli("run --config " + (dir / "bad.json").string()).code, 2);
  EXPECT_NE(run_cli("frobnicate").code, 0);
}

TEST_F(Cli, RunPlotExport) {
  const fs::path dir = scratch();
  const fs::path report = dir / "report.json";
  const fs::path snapshot = dir / "repo.txt";
  nlohmann::json config = {{"scenario", "monotone"},
                           {"dimension", 4},
                           {"vertices", 8},
                           {"hop_budget", 5},
                           {"seed", 3},
                           {"output", {{"report", report.string()}, {"snapshot", snapshot.string()}}}};
  write(dir / "run.json", config.dump());
  const Outcome run = run_cli("run --config " + (dir / "run.json").string() + " --agents 2 --json");
  ASSERT_EQ(run.code, 0);
  const auto j = nlohmann::json::parse(run.out);
  EXPECT_EQ(j.at("agents"), 2);
  EXPECT_EQ(j.at("steps"), 5);
  ASSERT_TRUE(fs::exists(report));
  ASSERT_TRUE(fs::exists(snapshot));

  const Outcome plot = run_cli("plot " + report.string() + " -o " + (dir / "plot.svg").string());
  EXPECT_EQ(plot.code, 0);
  std::ifstream svg(dir / "plot.svg");
  std::stringstream body;
  body << svg.rdbuf();
  EXPECT_NE(body.str().find("<svg"), std::string::npos);

  const fs::path out = dir / "best";
  fs::remove_all(out);
  const Outcome exp = run_cli("export --repo " + snapshot.string() + " --best 1 --out " + out.string());
  EXPECT_EQ(exp.code, 0);
  EXPECT_TRUE(fs::exists(out / "best_1.txt") || fs::exists(out / "best_0.txt"));
  fs::remove_all(dir);
}

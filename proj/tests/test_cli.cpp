#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cosetcodes/cli.hpp"

namespace cc = cosetcodes;
namespace cli = cosetcodes::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string log;
};

Result run(const cli::RunConfig& cfg) {
  std::ostringstream out, log;
  const int code = cli::run(cfg, out, log);
  return {code, out.str(), log.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ParsePair) {
  EXPECT_EQ(cli::parse_pair("3:5"), (std::pair<unsigned, unsigned>{3, 5}));
  EXPECT_THROW(cli::parse_pair("3,5"), cc::ParameterError);
  EXPECT_THROW(cli::parse_pair("x:5"), cc::ParameterError);
}

TEST(Cli, FamilyWritesMatrixAndGenerators) {
  const auto dir = std::filesystem::temp_directory_path() / "cosetcodes_cli_test";
  std::filesystem::create_directories(dir);
  cli::RunConfig cfg;
  cfg.command = "family";
  cfg.spec = {cc::Family::hs, 4, 3};
  cfg.output_path = (dir / "h3.txt").string();
  EXPECT_EQ(run(cfg).code, 0);
  const auto h = cc::from_matrix_text(slurp(dir / "h3.txt"));
  EXPECT_EQ(h, cc::hs_matrix(3, 4));
  const auto gens = slurp(dir / "h3.txt.generators");
  EXPECT_EQ(std::count(gens.begin(), gens.end(), '\n'), 50);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ReportJson) {
  cli::RunConfig cfg;
  cfg.command = "report";
  cfg.spec = {cc::Family::repetition, 4};
  const auto res = run(cfg);
  EXPECT_EQ(res.code, 0);
  const auto j = nlohmann::json::parse(res.out);
  EXPECT_EQ(j["rank"], 6);
  EXPECT_EQ(j["dim"], 10);
  EXPECT_EQ(j["rate_num"], 5);
  EXPECT_EQ(j["rate_den"], 8);
}

TEST(Cli, SweepIsDeterministic) {
  cli::RunConfig cfg;
  cfg.command = "sweep";
  cfg.pairs = std::vector<std::pair<unsigned, unsigned>>{{2, 4}, {2, 5}, {3, 4}};
  const auto a = run(cfg);
  const auto b = run(cfg);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 4);
  EXPECT_NE(a.log.find("s=2: rate increases"), std::string::npos);
}

TEST(Cli, MemoryCapSwitchesEngine) {
  cli::RunConfig cfg;
  cfg.command = "sweep";
  cfg.pairs = std::vector<std::pair<unsigned, unsigned>>{{3, 5}};
  const auto dense = run(cfg);
  EXPECT_NE(dense.log.find("rank 1276 (dense)"), std::string::npos) << dense.log;
  cfg.memory_cap = 1 << 20;
  const auto block = run(cfg);
  EXPECT_NE(block.log.find("rank 1276 (block)"), std::string::npos) << block.log;
  EXPECT_EQ(block.out, dense.out);
  cfg.engine = cc::RankEngine::dense;
  EXPECT_THROW(run(cfg), cc::CapacityError);
  EXPECT_EQ(cc::memory_cap(), cc::kDefaultMemoryCap);
}

TEST(Cli, VerifySuitesAndInjectedFault) {
  cli::RunConfig cfg;
  cfg.command = "verify";
  cfg.suites = {"permring"};
  cfg.verify_r = 4;
  cfg.cases = 50;
  auto res = run(cfg);
  EXPECT_EQ(res.code, 0) << res.out;
  EXPECT_NE(res.out.find("permring:"), std::string::npos);

  cfg.suites = {"reassembly"};
  cfg.inject_fault = true;
  res = run(cfg);
  EXPECT_EQ(res.code, cli::kExitCheckFailed);
  EXPECT_NE(res.out.find("[FAIL]"), std::string::npos);
}

TEST(Cli, GuessReportsCubeProbability) {
  cli::RunConfig cfg;
  cfg.command = "guess";
  cfg.spec = {cc::Family::zero_code, 3};
  cfg.trials = 5000;
  const auto res = run(cfg);
  EXPECT_EQ(res.code, 0);
  const auto j = nlohmann::json::parse(res.out);
  EXPECT_EQ(j["success_log2"], -4);
  EXPECT_EQ(j["mismatches"], 0);
}

TEST(Cli, UnknownCommand) {
  cli::RunConfig cfg;
  cfg.command = "plot";
  EXPECT_THROW(run(cfg), cc::ParameterError);
}

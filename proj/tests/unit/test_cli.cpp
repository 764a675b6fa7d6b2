#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "csv.hpp"

using namespace reputax;
using namespace reputax::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("reputax_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "run.toml";
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::vector<std::string> out;
  std::ifstream in(p);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

int run_cmd(const std::string& command, const fs::path& config, const fs::path& out,
            std::string axis = "", std::optional<std::uint64_t> seed = {}) {
  std::ostringstream log, err;
  return run({command, config, out, seed, axis}, log, err);
}

const char* kSmall =
    "theta_grid_size = 41\n"
    "grid_count_B = 40\n";

}  // namespace

TEST(Config, DefaultsAndComments) {
  std::istringstream in("# comment\nbeta = 0.9   # trailing\nlabel = \"a # b\"\ntheta_probes = [0.5, 0.7]\n");
  const RunConfig c = parse_config(in);
  EXPECT_EQ(c.solver.beta, 0.9);
  EXPECT_EQ(c.label, "a # b");
  EXPECT_EQ(c.theta_probes, (std::vector<double>{0.5, 0.7}));
  EXPECT_EQ(c.solver.theta_grid_size, 401);
}

TEST(Config, RejectsUnknownDuplicateAndMalformed) {
  for (const char* text : {"bogus = 1\n", "beta = 0.9\nbeta = 0.8\n", "beta = abc\n",
                           "beta\n", "theta_grid_size = 2\n", "garble_eps_list = [0.2, 0.1]\n",
                           "persist_pi_HH = [0.9]\n", "beta = [0.9]\n", "backend = other\n",
                           "history_probes = [1.0]\n", "tau_max = 0.995\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(parse_config(in), ConfigError) << text;
  }
}

TEST(Config, ParamsLineListsEveryKey) {
  const std::string line = RunConfig{}.params_line();
  EXPECT_EQ(line.rfind("# params:", 0), 0u);
  for (const auto& k : config_keys()) EXPECT_NE(line.find(" " + k + "="), std::string::npos) << k;
  EXPECT_NE(line.find(" beta=0.95"), std::string::npos);
}

TEST(Csv, FixedNineDecimals) {
  EXPECT_EQ(fixed9(0.5946035575013605), "0.594603558");
  EXPECT_EQ(fixed9(-1e-15), "0.000000000");
  EXPECT_EQ(fixed9(-0.25), "-0.250000000");
}

TEST(Cli, SolveStaticWritesCutoffAndRows) {
  const fs::path dir = scratch("static");
  const fs::path cfg = write_config(dir, std::string(kSmall) + "theta_probes = [0.5]\n");
  ASSERT_EQ(run_cmd("solve-static", cfg, dir / "out"), kExitOk);
  const auto cut = lines(dir / "out" / "cutoff.txt");
  EXPECT_EQ(cut[1], "theta_bar=0.594603558");
  const auto rows = lines(dir / "out" / "static_policy.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].rfind("# params:", 0), 0u);
  EXPECT_EQ(rows[1], "theta,R_star,S_star,tau_L,tau_B,value");
  EXPECT_EQ(rows[2].substr(0, 24), "0.500000000,0.000000000,");
  const std::string raw = slurp(dir / "out" / "static_policy.csv");
  EXPECT_EQ(raw.back(), '\n');
}

TEST(Cli, ConfigErrorWritesNothing) {
  const fs::path dir = scratch("bad");
  const fs::path cfg = write_config(dir, "no_such_key = 3\n");
  EXPECT_EQ(run_cmd("solve-static", cfg, dir / "out"), kExitConfig);
  EXPECT_FALSE(fs::exists(dir / "out"));
  EXPECT_EQ(run_cmd("solve-static", dir / "missing.toml", dir / "out"), kExitConfig);
}

TEST(Cli, DescendingSweepListIsConfigError) {
  const fs::path dir = scratch("desc");
  const fs::path cfg = write_config(dir, "garble_eps_list = [0.3, 0.1]\n");
  EXPECT_EQ(run_cmd("sweep", cfg, dir / "out", "garble"), kExitConfig);
}

TEST(Cli, NonConvergenceIsSolverError) {
  const fs::path dir = scratch("nonconv");
  const fs::path cfg = write_config(dir, std::string(kSmall) + "max_iters = 3\n");
  EXPECT_EQ(run_cmd("solve-dynamic", cfg, dir / "out"), kExitSolver);
}

TEST(Cli, NoDiscountingDynamicEqualsStatic) {
  const fs::path dir = scratch("beta0");
  const fs::path cfg = write_config(dir, std::string(kSmall) + "beta = 0\n");
  ASSERT_EQ(run_cmd("solve-static", cfg, dir / "out"), kExitOk);
  ASSERT_EQ(run_cmd("solve-dynamic", cfg, dir / "out"), kExitOk);
  const auto s = lines(dir / "out" / "static_policy.csv");
  const auto d = lines(dir / "out" / "dynamic_policy.csv");
  ASSERT_EQ(s.size(), d.size());
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_EQ(s[i], d[i]);
}

TEST(Cli, DynamicDiagnosticsAndRerunIdentical) {
  const fs::path dir = scratch("dyn");
  const fs::path cfg = write_config(dir, kSmall);
  ASSERT_EQ(run_cmd("solve-dynamic", cfg, dir / "a"), kExitOk);
  ASSERT_EQ(run_cmd("solve-dynamic", cfg, dir / "b"), kExitOk);
  for (const char* f : {"dynamic_policy.csv", "value.csv", "diagnostics.txt"})
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  const std::string diag = slurp(dir / "a" / "diagnostics.txt");
  EXPECT_NE(diag.find("cutoff_ordering=pass"), std::string::npos);
  EXPECT_NE(diag.find("beta=0.950000000"), std::string::npos);
}

TEST(Cli, SimulateIsDeterministicAndSized) {
  const fs::path dir = scratch("sim");
  const fs::path cfg = write_config(
      dir, std::string(kSmall) + "sim_paths = 2\nsim_horizon = 3\nhistory_probes = [0.8]\n");
  ASSERT_EQ(run_cmd("simulate", cfg, dir / "a", "", 42), kExitOk);
  ASSERT_EQ(run_cmd("simulate", cfg, dir / "b", "", 42), kExitOk);
  const auto rows = lines(dir / "a" / "paths.csv");
  ASSERT_EQ(rows.size(), 2u + 6u);
  EXPECT_EQ(rows[1], "path_id,t,type,theta,tau_L,tau_B,R,G,s,theta_next");
  EXPECT_EQ(slurp(dir / "a" / "paths.csv"), slurp(dir / "b" / "paths.csv"));
  EXPECT_NE(slurp(dir / "a" / "history_check.txt").find("verdict=pass"), std::string::npos);
}

TEST(Cli, SimulateHonestAbsorbingWorld) {
  const fs::path dir = scratch("simH");
  const fs::path cfg = write_config(dir, std::string(kSmall) +
                                             "sim_initial_theta = 1\npi_HH = 1\nsim_paths = 5\n"
                                             "sim_horizon = 10\nhistory_probes = [0.8]\n");
  ASSERT_EQ(run_cmd("simulate", cfg, dir / "out"), kExitOk);
  const auto rows = lines(dir / "out" / "paths.csv");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    std::stringstream ss(rows[i]);
    std::string id, t, type;
    std::getline(ss, id, ',');
    std::getline(ss, t, ',');
    std::getline(ss, type, ',');
    EXPECT_EQ(type, "H");
  }
}

TEST(Cli, SimulateFromPolicyFile) {
  const fs::path dir = scratch("simfile");
  const fs::path cfg = write_config(dir, kSmall);
  ASSERT_EQ(run_cmd("solve-dynamic", cfg, dir / "solve"), kExitOk);
  const fs::path cfg2 = write_config(
      dir, std::string(kSmall) + "history_probes = [0.8]\npolicy_file = \"" +
               (dir / "solve" / "dynamic_policy.csv").string() + "\"\n");
  EXPECT_EQ(run_cmd("simulate", cfg2, dir / "out"), kExitOk);
  const fs::path cfg3 = write_config(dir, std::string(kSmall) + "policy_file = \"/nonexistent.csv\"\n");
  EXPECT_EQ(run_cmd("simulate", cfg3, dir / "out3"), kExitSolver);
}

TEST(Cli, ReplicateFiguresWithinTolerance) {
  const fs::path dir = scratch("fig");
  const fs::path cfg = write_config(dir, "");
  ASSERT_EQ(run_cmd("replicate-figures", cfg, dir / "out"), kExitOk);
  EXPECT_EQ(lines(dir / "out" / "figure1.csv").size(), 18u);
  EXPECT_EQ(lines(dir / "out" / "figure2.csv").size(), 18u);
  const fs::path gen = write_config(dir, "backend = general\n");
  EXPECT_EQ(run_cmd("replicate-figures", gen, dir / "gen"), kExitConfig);
}

TEST(Cli, SweepWritesVerdictColumn) {
  const fs::path dir = scratch("sweep");
  const fs::path cfg = write_config(dir, std::string(kSmall) + "garble_eps_list = [0, 0.2]\n");
  ASSERT_EQ(run_cmd("sweep", cfg, dir / "out", "garble"), kExitOk);
  const auto rows = lines(dir / "out" / "sweep_garble.csv");
  EXPECT_EQ(rows[1], "level,eps,theta,R_star,cutoff,verdict");
  EXPECT_EQ(rows.size(), 2u + 2u * 41u);
}

TEST(Cli, FailedComparativeStaticExitsFour) {
  const fs::path dir = scratch("enf");
  const fs::path cfg = write_config(dir, std::string(kSmall) + "lambda_list = [0, 1]\n");
  EXPECT_EQ(run_cmd("sweep", cfg, dir / "out", "enforce"), kExitAssertion);
  EXPECT_NE(slurp(dir / "out" / "sweep_enforce.csv").find(",fail"), std::string::npos);
}

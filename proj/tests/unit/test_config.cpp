#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "lavrentiev/config.hpp"

using namespace lavrentiev;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"(
[grids]
nx = 17
nt = 65

[gamma]
intervals = 8
breakpoints = 0.25, 0.75

[phantom]
name = u1

[regularization]
lambda = 1e-3
mu = 1e-4

[noise]
delta = 0.01
seed = 11

[solver]
max_outer = 3000
)";

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lavrentiev_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + LAVRENTIEV_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_small_config(const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path p = dir / "small.ini";
  std::ofstream(p) << kSmall;
  return p;
}

} // namespace

TEST(ParseConfig, ReadsEverySection) {
  const ExperimentConfig c = parse_config(kSmall);
  EXPECT_EQ(c.nx, 17u);
  EXPECT_EQ(c.nt, 65u);
  EXPECT_EQ(c.intervals, 8u);
  EXPECT_EQ(c.breakpoints, (std::vector<double>{0.25, 0.75}));
  EXPECT_EQ(c.phantom, "u1");
  EXPECT_EQ(c.weights.lambda, 1e-3);
  EXPECT_EQ(c.weights.mu, 1e-4);
  EXPECT_EQ(c.noise.seed, 11u);
  EXPECT_EQ(c.noise.mode, NoiseMode::relative);
  EXPECT_EQ(c.max_outer, 3000);
  EXPECT_EQ(c.k_max, 5); // default
}

TEST(ParseConfig, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_config("[grids]\nnx = 17\nny = 3\n"), ConfigError);
  EXPECT_THROW(parse_config("[mesh]\nnx = 17\n"), ConfigError);
  EXPECT_THROW(parse_config("[grids]\nnx = seventeen\n"), ConfigError);
  EXPECT_THROW(parse_config("[grids]\nnx = -5\n"), ConfigError);
  EXPECT_THROW(parse_config("[grids]\nnx = 2\n"), ConfigError);
  EXPECT_THROW(parse_config("[regularization]\nlambda = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("[noise]\nmode = loud\n"), ConfigError);
  EXPECT_THROW(parse_config("[solver]\ninertia = maybe\n"), ConfigError);
  EXPECT_THROW(parse_config("[grids\nnx = 3\n"), ConfigError);
  EXPECT_EQ(parse_config("[solver]\ntol_update = inf\n").tol_update, std::numeric_limits<double>::infinity());
}

TEST(LoadConfig, LayersPresetFileSeedAndOverrides) {
  const ExperimentConfig preset = load_config(std::nullopt, "fig2-u1", std::nullopt, {});
  EXPECT_EQ(preset.weights.lambda, 1e-4);
  EXPECT_EQ(preset.weights.mu, 1e-5);
  EXPECT_EQ(preset.nx, 65u);
  EXPECT_EQ(preset.breakpoints.size(), 3u);

  const fs::path dir = scratch_dir("layers");
  fs::create_directories(dir);
  std::ofstream(dir / "c.ini") << "[preset]\nbase = fig3\n[regularization]\nmu = 3e-6\n";
  const ExperimentConfig c =
      load_config(dir / "c.ini", std::nullopt, 99u, {"grids.nx=33", "regularization.lambda = 7e-5"});
  EXPECT_EQ(c.weights.lambda, 7e-5); // override beats preset
  EXPECT_EQ(c.weights.mu, 3e-6);     // file beats preset
  EXPECT_EQ(c.noise.seed, 99u);      // --seed beats preset
  EXPECT_EQ(c.nx, 33u);
  EXPECT_EQ(c.nt, 257u); // from the preset

  EXPECT_THROW(load_config(std::nullopt, "fig9", std::nullopt, {}), ConfigError);
  EXPECT_THROW(load_config(std::nullopt, "fig1", std::nullopt, {"grids.nz=3"}), ConfigError);
  EXPECT_THROW(load_config(std::nullopt, "fig1", std::nullopt, {"nx=3"}), ConfigError);
  EXPECT_THROW(load_config(dir / "missing.ini", std::nullopt, std::nullopt, {}), ConfigError);
  fs::remove_all(dir);
}

TEST(LoadConfig, EveryPresetLoadsAndPinsTheSharedSettings) {
  for (const char* name : {"fig1", "fig2-u1", "fig2-u2", "fig3", "fig4-u1", "fig4-u2"}) {
    const ExperimentConfig c = load_config(std::nullopt, std::string(name), std::nullopt, {});
    EXPECT_EQ(c.nx, 65u) << name;
    EXPECT_EQ(c.nt, 257u) << name;
    EXPECT_EQ(c.intervals, 16u) << name;
    EXPECT_EQ(c.k_max, 5) << name;
    EXPECT_EQ(c.noise.delta, 1e-2) << name;
    EXPECT_EQ(c.tol_update, 1e-6) << name;
  }
  EXPECT_EQ(load_config(std::nullopt, "fig3", std::nullopt, {}).weights.lambda, 1e-5);
  EXPECT_EQ(load_config(std::nullopt, "fig3", std::nullopt, {}).weights.mu, 2e-6);
  EXPECT_EQ(load_config(std::nullopt, "fig2-u2", std::nullopt, {}).weights.lambda, 2e-6);
  EXPECT_EQ(load_config(std::nullopt, "fig2-u2", std::nullopt, {}).phantom, "u2");
}

TEST(Commands, ForwardWritesFieldsWithHeaders) {
  const fs::path out = scratch_dir("forward") / "nested" / "dir";
  ExperimentConfig c = parse_config(kSmall);
  cmd_forward(c, out);
  const auto u = lines(slurp(out / "u.csv"));
  const auto y = lines(slurp(out / "y.csv"));
  ASSERT_EQ(u.size(), 1u + 8u);
  ASSERT_EQ(y.size(), 1u + 65u);
  EXPECT_EQ(u[0], "# nx=17 nt=65 N=8");
  EXPECT_EQ(y[0], u[0]);

  c.phantom = "zero";
  cmd_forward(c, out);
  for (const std::string& l : lines(slurp(out / "y.csv"))) {
    if (l[0] == '#') continue;
    std::istringstream row(l);
    for (std::string cell; std::getline(row, cell, ',');) EXPECT_EQ(std::stod(cell), 0.0);
  }
  fs::remove_all(out.parent_path().parent_path());
}

TEST(Commands, InvertWritesFourFiles) {
  const fs::path out = scratch_dir("invert");
  ExperimentConfig c = parse_config(kSmall);
  cmd_invert(c, out);
  for (const char* f : {"reconstruction.csv", "error.csv", "trace.csv", "summary.csv"}) EXPECT_TRUE(fs::exists(out / f));
  const auto summary = lines(slurp(out / "summary.csv"));
  ASSERT_EQ(summary.size(), 2u);
  EXPECT_EQ(summary[0], "rel_error,rel_residual,iterations,fixed_point_residual");
  EXPECT_EQ(lines(slurp(out / "trace.csv"))[0], "iter,update_norm,residual,tv,sobolev,gamma_n,gamma_sum");

  // the stopping test is update <= tol: tol = 0 runs to max_outer, tol = inf stops after one step
  c.tol_update = 0.0;
  c.max_outer = 25;
  cmd_invert(c, out);
  EXPECT_EQ(lines(slurp(out / "trace.csv")).size(), 1u + 25u);
  c.tol_update = std::numeric_limits<double>::infinity();
  cmd_invert(c, out);
  EXPECT_EQ(lines(slurp(out / "trace.csv")).size(), 1u + 1u);
  fs::remove_all(out);
}

TEST(Commands, RatesWritesTableAndSlopes) {
  const fs::path out = scratch_dir("rates");
  ExperimentConfig c = parse_config(kSmall);
  c.rate_levels = 3;
  cmd_rates(c, out);
  const auto rates = lines(slurp(out / "rates.csv"));
  ASSERT_EQ(rates.size(), 1u + 3u);
  const auto slopes = lines(slurp(out / "slopes.csv"));
  ASSERT_EQ(slopes.size(), 3u);
  EXPECT_EQ(slopes[1].rfind("rel_error,", 0), 0u);
  EXPECT_EQ(slopes[2].rfind("rel_residual,", 0), 0u);
  fs::remove_all(out);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch_dir("cli");
  const fs::path cfg = write_small_config(dir);
  EXPECT_EQ(run_cli("forward --config " + cfg.string() + " --out " + (dir / "a").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "a" / "y.csv"));
  EXPECT_EQ(run_cli("forward --preset nope --out " + (dir / "b").string()), 2);
  EXPECT_EQ(run_cli("forward --config " + (dir / "missing.ini").string()), 2);
  EXPECT_EQ(run_cli("invert --config " + cfg.string() + " --override solver.bogus=1"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli(""), 2);
  // claiming a cocoercivity constant far above the true one admits a step
  // size that makes the iteration blow up
  EXPECT_EQ(run_cli("invert --config " + cfg.string() + " --override solver.C=1e8 --override solver.alpha=1e8 --out " +
                    (dir / "c").string()),
            3);
  fs::remove_all(dir);
}

TEST(Cli, RerunsAreByteIdentical) {
  const fs::path dir = scratch_dir("determinism");
  const fs::path cfg = write_small_config(dir);
  for (const char* run : {"r1", "r2"}) {
    ASSERT_EQ(run_cli("invert --config " + cfg.string() + " --seed 5 --out " + (dir / run).string()), 0);
    ASSERT_EQ(run_cli("forward --config " + cfg.string() + " --out " + (dir / run).string()), 0);
  }
  for (const char* f : {"u.csv", "y.csv", "reconstruction.csv", "error.csv", "trace.csv", "summary.csv"})
    EXPECT_EQ(slurp(dir / "r1" / f), slurp(dir / "r2" / f)) << f;

  ASSERT_EQ(run_cli("invert --config " + cfg.string() + " --seed 6 --out " + (dir / "r3").string()), 0);
  EXPECT_NE(slurp(dir / "r1" / "summary.csv"), slurp(dir / "r3" / "summary.csv"));
  fs::remove_all(dir);
}

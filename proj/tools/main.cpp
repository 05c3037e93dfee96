#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lavrentiev/config.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOptions {
  std::string config;
  std::string preset;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "INI configuration file");
  cmd->add_option("--preset", o.preset, "named preset (fig1, fig2-u1, fig2-u2, fig3, fig4-u1, fig4-u2)");
  cmd->add_option("--out", o.out, "output directory (created if missing)");
  cmd->add_option("--seed", o.seed, "noise seed, replaces noise.seed");
  cmd->add_option("--override", o.overrides, "section.key=value, repeatable")->take_all()->allow_extra_args(false);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lavrentiev regularization for the semilinear heat equation: forward runs, inversion, rate studies"};
  app.require_subcommand(1);
  CommonOptions opts;
  auto* fwd = app.add_subcommand("forward", "solve the PDE for the configured phantom (u.csv, y.csv)");
  auto* inv = app.add_subcommand("invert", "reconstruct the source from noisy data");
  auto* rates = app.add_subcommand("rates", "semi-convergence study over halved noise levels");
  for (auto* c : {fwd, inv, rates}) add_common(c, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    std::optional<std::filesystem::path> config;
    if (!opts.config.empty()) config = opts.config;
    std::optional<std::string> preset;
    if (!opts.preset.empty()) preset = opts.preset;
    const auto cfg = lavrentiev::load_config(config, preset, opts.seed, opts.overrides);
    const std::filesystem::path out = opts.out;
    if (fwd->parsed())
      lavrentiev::cmd_forward(cfg, out);
    else if (inv->parsed())
      lavrentiev::cmd_invert(cfg, out);
    else
      lavrentiev::cmd_rates(cfg, out);
  } catch (const lavrentiev::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}

// Command-line driver. Precedence for campaign settings, lowest first:
// built-in preset, command-line flags, --config file.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmlab/campaign.hpp"
#include "cmlab/errors.hpp"
#include "cmlab/io.hpp"
#include "cmlab/proofs.hpp"

namespace {

using cmlab::Json;

struct CampaignFlags {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
  std::vector<double> p_grid;
  std::vector<int> n_grid;
  std::vector<int> dims;
  std::vector<std::string> suites;
  std::vector<std::string> ensembles;
  std::vector<std::string> tol;
  std::string out;
};

void add_campaign_flags(CLI::App* app, CampaignFlags& f) {
  app->add_option("--config", f.config, "JSON campaign config; its keys override the flags");
  app->add_option("--preset", f.preset, "full, inequalities or conjecture");
  app->add_option("--seed", f.seed, "master seed");
  app->add_option("--trials", f.trials, "trials per cell");
  app->add_option("--threads", f.threads, "worker threads (0: all cores)");
  app->add_option("--p-grid", f.p_grid, "comma-separated p values")->delimiter(',');
  app->add_option("--n-grid", f.n_grid, "comma-separated tuple sizes")->delimiter(',');
  app->add_option("--dims", f.dims, "comma-separated dimensions")->delimiter(',');
  app->add_option("--suites", f.suites, "comma-separated suite names")->delimiter(',');
  app->add_option("--ensembles", f.ensembles, "comma-separated ensemble kinds")->delimiter(',');
  app->add_option("--tol", f.tol, "tolerance override name=value (repeatable)");
  app->add_option("--out", f.out, "report path");
}

cmlab::CampaignConfig build_config(const CampaignFlags& f, cmlab::CampaignConfig base) {
  Json flags = Json::object();
  if (!f.preset.empty()) flags["preset"] = f.preset;
  if (f.seed) flags["seed"] = *f.seed;
  if (f.trials) flags["trials"] = *f.trials;
  if (f.threads) flags["threads"] = *f.threads;
  if (!f.p_grid.empty()) flags["p_grid"] = f.p_grid;
  if (!f.n_grid.empty()) flags["n_grid"] = f.n_grid;
  if (!f.dims.empty()) flags["dims"] = f.dims;
  if (!f.suites.empty()) flags["suites"] = f.suites;
  if (!f.ensembles.empty()) flags["ensembles"] = f.ensembles;
  if (!f.out.empty()) flags["out"] = f.out;
  if (!f.tol.empty()) {
    Json tol = Json::object();
    for (const auto& item : f.tol) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw cmlab::InputError("--tol expects name=value");
      try {
        tol[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (const std::logic_error&) {
        throw cmlab::InputError("--tol: bad value in " + item);
      }
    }
    flags["tol"] = tol;
  }
  cmlab::CampaignConfig config = cmlab::apply_config_json(std::move(base), flags);
  if (!f.config.empty()) config = cmlab::apply_config_json(config, cmlab::read_json_file(f.config));
  return config;
}

std::vector<double> grid_from(const std::vector<double>& spec, const char* name) {
  if (spec.size() != 3 || spec[2] < 1 || spec[2] != static_cast<int>(spec[2])) {
    throw cmlab::InputError(std::string(name) + " expects lo,hi,count");
  }
  const int count = static_cast<int>(spec[2]);
  if (count == 1) return {spec[0]};
  return cmlab::linspace(spec[0], spec[1], count);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schatten-class inequality verification workbench"};
  app.require_subcommand(1);

  CampaignFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "run inequality campaigns and write a JSON report");
  add_campaign_flags(verify, verify_flags);

  CampaignFlags conjecture_flags;
  auto* conjecture =
      app.add_subcommand("conjecture", "search unitaries for the n-tuple orbit inequality");
  add_campaign_flags(conjecture, conjecture_flags);
  int budget = 0, restarts = 0;
  conjecture->add_option("--budget", budget, "iterations per restart");
  conjecture->add_option("--restarts", restarts, "restarts per instance");

  std::string witness_input, witness_out;
  double witness_p = 0.0;
  auto* witness = app.add_subcommand("witness", "replay the witness argument on one tuple");
  witness->add_option("input", witness_input, "tuple JSON file")->required();
  witness->add_option("-p,--p", witness_p, "exponent, 1 < p <= 2")->required();
  witness->add_option("--out", witness_out, "JSON output path");

  std::string interp_input, interp_out;
  double interp_p = 0.0;
  std::vector<double> x_spec{0.5, 1.0, 11}, y_spec{-5.0, 5.0, 41};
  auto* interpolate =
      app.add_subcommand("interpolate", "scan the interpolation family over the strip");
  interpolate->add_option("input", interp_input, "tuple JSON file")->required();
  interpolate->add_option("-p,--p", interp_p, "exponent, 1 < p <= 2")->required();
  interpolate->add_option("--x-grid", x_spec, "lo,hi,count within [1/2, 1]")->delimiter(',');
  interpolate->add_option("--y-grid", y_spec, "lo,hi,count")->delimiter(',');
  interpolate->add_option("--out", interp_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cmlab::kExitInvalid;
  }

  try {
    if (verify->parsed()) {
      return cmlab::run_verify(build_config(verify_flags, cmlab::preset_config()), std::cout);
    }
    if (conjecture->parsed()) {
      cmlab::CampaignConfig config = cmlab::conjecture_preset();
      if (budget > 0) config.budget = budget;
      if (restarts > 0) config.restarts = restarts;
      return cmlab::run_conjecture(build_config(conjecture_flags, config), std::cout);
    }
    if (witness->parsed()) {
      return cmlab::run_witness(cmlab::read_tuple_file(witness_input), witness_p, witness_out,
                                std::cout);
    }
    if (interpolate->parsed()) {
      const auto xs = grid_from(x_spec, "--x-grid");
      const auto ys = grid_from(y_spec, "--y-grid");
      return cmlab::run_interpolate(cmlab::read_tuple_file(interp_input), interp_p, xs, ys,
                                    interp_out, std::cout, std::cerr);
    }
  } catch (const cmlab::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cmlab::kExitInvalid;
  } catch (const cmlab::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cmlab::kExitInvalid;
  }
  return cmlab::kExitInvalid;
}

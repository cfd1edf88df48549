#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "fracwave/errors.hpp"
#include "fracwave/parallel.hpp"
#include "fracwave_harness/commands.hpp"
#include "fracwave_harness/config.hpp"
#include "fracwave_harness/suite.hpp"

namespace fh = fracwave::harness;

namespace {

constexpr int kAcceptanceFailure = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

const char* describe(const std::string& name) {
  if (name == "simulate") return "integrate one trajectory, write norms and energy residual";
  if (name == "decay-fit") return "fit the exponential decay rate of the energy norm";
  if (name == "strichartz") return "L5(L10) norms over unit time windows";
  if (name == "cluster") return "L5 quotients of spectral cluster projections";
  if (name == "smoothing") return "E1 blow-up exponent as t -> 0 for rough data";
  if (name == "squeeze") return "squeezing constant over an ensemble";
  if (name == "attractor") return "absorbing radius and box-counting dimension";
  if (name == "verify-all") return "run the acceptance suite";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-Galerkin simulator for fractionally damped semilinear waves"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int threads = 1;

  for (const auto& name : fh::subcommands()) {
    auto* sub = app.add_subcommand(name, describe(name));
    auto* cfg = sub->add_option("--config", config_path, "INI scenario file");
    if (name != "verify-all") cfg->required();
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "overrides run.seed");
    sub->add_option("--threads", threads, "worker threads (speed only)")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const bool seed_given = app.get_subcommands().front()->count("--seed") > 0;
  fracwave::set_thread_count(threads);

  try {
    fh::RunConfig config;
    if (!config_path.empty()) config = fh::load_config(config_path);
    if (seed_given) {
      config.seed = seed;
      config.initial.seed = seed;
    }

    fh::CommandResult result;
    if (name == "verify-all") {
      auto suite = fh::run_verify_all(config.seed, [](const fh::CriterionOutcome& o, double secs) {
        std::printf("%-4s criterion %2d  %-42s %s (%.1f s)\n", o.passed ? "PASS" : "FAIL", o.id, o.title.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
      });
      result.bundle = std::move(suite.bundle);
      result.acceptance_failed = !suite.all_passed;
    } else {
      result = fh::run_command(name, config);
    }
    result.bundle.keep_files(config.outputs);
    result.bundle.write(out_dir);
    std::printf("%s: wrote %zu file(s) and summary.txt to %s\n", name.c_str(), result.bundle.files().size(),
                out_dir.c_str());
    return result.acceptance_failed ? kAcceptanceFailure : 0;
  } catch (const fh::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const fracwave::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumericalFailure;
  }
}

#pragma once

#include <string>
#include <vector>

#include "fracwave_harness/config.hpp"
#include "fracwave_harness/report.hpp"

namespace fracwave::harness {

/// simulate, decay-fit, strichartz, cluster, smoothing, squeeze, attractor, verify-all.
const std::vector<std::string>& subcommands();

struct CommandResult {
  ReportBundle bundle;
  bool acceptance_failed = false;  ///< verify-all only
};

/// Runs one subcommand. The config is unused by verify-all apart from the seed.
/// Unknown subcommands throw ConfigError.
CommandResult run_command(const std::string& name, const RunConfig& config);

ReportBundle cmd_simulate(const RunConfig& config);
ReportBundle cmd_decay_fit(const RunConfig& config);
ReportBundle cmd_strichartz(const RunConfig& config);
ReportBundle cmd_cluster(const RunConfig& config);
ReportBundle cmd_smoothing(const RunConfig& config);
ReportBundle cmd_squeeze(const RunConfig& config);
ReportBundle cmd_attractor(const RunConfig& config);

}  // namespace fracwave::harness

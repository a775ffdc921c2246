#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "finehull_app/artifacts.hpp"
#include "finehull_app/config.hpp"

namespace finehull::app {

const std::vector<std::string>& subcommands();

/// Computes the artifacts of one subcommand without touching the disk.
/// Throws ConfigError and finehull::Error.
ArtifactSet produce(const std::string& subcommand, const RunConfig& config, std::ostream& log);

/// Dispatches, writes artifacts plus manifest under config.out and returns the
/// exit code: 0 success, 1 precondition failure (error JSON on stderr),
/// 2 internal failure or a failed acceptance row.
int run(const std::string& subcommand, RunConfig config, std::ostream& out, std::ostream& err);

}  // namespace finehull::app

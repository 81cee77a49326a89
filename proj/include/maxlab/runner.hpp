#pragma once

#include <string>

#include "maxlab/config.hpp"

namespace maxlab {

struct CliOptions {
    std::string subcommand;
    std::string config_path; // empty: builtin defaults
    std::string out_dir = "out";
    long long seed = -1; // overrides initial.seed when >= 0
    int workers = 2;
    bool force = false;
    int verbosity = 0; // from MAXLAB_LOG
};

/// Known configuration keys (strict schema shared by all subcommands).
const std::set<std::string>& config_schema();

/// Exit status: 0 pass, 2 config error, 3 invariant violation.
int run_subcommand(const CliOptions& opts);

} // namespace maxlab

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "maxlab/runner.hpp"
#include "maxlab/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"maxlab: pseudospectral Maxwell laboratory on reflected half-spaces"};
    app.set_version_flag("--version", std::string("maxlab ") + maxlab::version_string);

    maxlab::CliOptions opts;
    if (const char* env = std::getenv("MAXLAB_LOG")) opts.verbosity = std::atoi(env);

    const std::vector<std::string> subcommands = {
        "linear2d",     "linear3d",       "kerr2d",          "check-symbols", "check-helmholtz",
        "check-envelopes", "check-compat", "strichartz-sweep", "cyl-consistency"};
    for (const std::string& name : subcommands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "key=value configuration file");
        sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
        sub->add_option("--seed", opts.seed, "override the run seed");
        sub->add_option("--workers", opts.workers, "concurrent sweep workers")->capture_default_str();
        sub->add_flag("--force", opts.force, "allow writing into a non-empty output directory");
        sub->callback([&opts, name]() { opts.subcommand = name; });
    }
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    return maxlab::run_subcommand(opts);
}

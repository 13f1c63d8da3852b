#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "dirac/errors.hpp"
#include "dirac/io.hpp"

namespace {

int dispatch(const std::string& command, const std::string& config,
             const std::string& out_dir, const dirac::CommandOptions& opts) {
    dirac::Scenario sc;
    if (!config.empty()) sc = dirac::parse_scenario(config);
    sc.validate();
    const auto manifest = dirac::run_command(command, sc, out_dir, opts);
    std::printf("%s: wrote %zu output(s) to %s\n", command.c_str(),
                manifest.outputs.size() + 1, out_dir.c_str());
    for (const auto& [k, v] : manifest.scalars) {
        std::printf("  %s = %s\n", k.c_str(), dirac::format_value(v).c_str());
    }
    for (const auto& w : manifest.warnings) {
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1+1D Dirac wavepacket simulator: conventional vs "
                 "time-symmetric transition pipelines"};
    app.require_subcommand(1);

    std::string config, out_dir = "out";
    std::string channel = "+";
    dirac::CommandOptions opts;
    unsigned seed = 0;  // reserved; no stochastic component at present

    app.add_option("--config", config, "scenario config file (key = value)");
    app.add_option("--out", out_dir, "output directory");
    std::size_t grid_n = 0;
    app.add_option("--grid-n", grid_n, "override grid resolution");
    app.add_option("--channel", channel, "energy channel, + or -");
    app.add_option("--seed", seed, "reserved");
    app.add_flag("--strict", opts.strict, "escalate warnings to errors");

    for (const auto* name :
         {"simulate-ci", "simulate-rsi", "compare", "validate", "emit-figures"}) {
        app.add_subcommand(name)->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (grid_n != 0) opts.grid_n = grid_n;
        if (channel == "+") opts.channel = +1;
        else if (channel == "-") opts.channel = -1;
        else throw dirac::ConfigError("--channel must be + or -");
        return dispatch(app.get_subcommands().front()->get_name(), config,
                        out_dir, opts);
    } catch (const dirac::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const dirac::NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const dirac::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dirac/scenario.hpp"

namespace dirac {

// Flat key = value config with [grid] / [physics] / [scenario] sections.
// Unknown keys are rejected with line-precise messages; omitted keys take
// the default-scenario values.
Scenario parse_scenario(const std::filesystem::path& path);
Scenario parse_scenario_text(std::istream& in, const std::string& source_name);

struct CommandOptions {
    int channel = +1;           // +1 or -1, RSI energy channel
    bool strict = false;        // escalate warnings to errors (exit 3)
    std::optional<std::size_t> grid_n;  // override scenario grid resolution
};

struct RunManifest {
    std::uint64_t config_digest = 0;
    std::string artifact_version;
    std::string command;
    struct Output {
        std::string path;
        std::string kind;
        std::size_t rows = 0;
    };
    std::vector<Output> outputs;
    std::map<std::string, double> scalars;
    std::vector<std::string> warnings;
};

// Commands: simulate-ci, simulate-rsi, compare, validate, emit-figures.
// Outputs are deterministic: identical config + build -> identical bytes.
RunManifest run_command(const std::string& command, const Scenario& scenario,
                        const std::filesystem::path& out_dir,
                        const CommandOptions& options = {});

void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& path);

// CSV helpers (15 significant digits)
std::string format_value(double v);
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path);

}  // namespace dirac

#pragma once

#include "carnot/config.hpp"
#include "carnot/gaussgreen.hpp"

#include <optional>

namespace carnot {

struct RunOptions {
    std::string suite = "full";
    std::optional<uint64_t> seed; // overrides the config seed
    int threads = 1;
};

struct RunResult {
    std::vector<GaussGreenReport> reports;
    std::string csv;             // byte-stable for a fixed config + seed
    nlohmann::json json_report;  // embeds the resolved config
    bool all_pass = false;
};

/// Resolve every scenario of the selected suite (fail fast on bad presets),
/// then execute. Scenario randomness derives from (seed, scenario name), so
/// results do not depend on execution order or thread count.
RunResult run_suite(const SuiteConfig& cfg, const RunOptions& opt);

std::string list_presets();
std::string describe_preset(const std::string& name);

} // namespace carnot

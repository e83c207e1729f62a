#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace carnot {

struct ScenarioSpec {
    std::string name;
    std::string kind;
    nlohmann::json params;
};

/// Parsed and validated suite configuration. Validation resolves every
/// referenced preset and checks scenario parameters up front, so a run
/// cannot die halfway through a long quadrature on a typo.
struct SuiteConfig {
    uint64_t seed = 0;
    std::string group = "heisenberg1";
    nlohmann::json inline_group; // non-null overrides `group`
    std::string norm = "gauge";
    std::string mollifier_profile = "linear";
    long mollifier_samples = 400000;
    std::vector<ScenarioSpec> scenarios;
    std::map<std::string, std::vector<std::string>> suites; // name -> scenario names
    std::string csv_name = "report.csv";
    std::string json_name = "report.json";
    nlohmann::json raw; // resolved form, embedded in reports

    /// Scenario list for a suite name; "full" (or an unknown empty suites map)
    /// selects everything.
    std::vector<const ScenarioSpec*> select(const std::string& suite) const;
};

/// Parse + validate; throws std::invalid_argument with a key path, or a
/// json parse_error annotated with byte position.
SuiteConfig load_config_text(const std::string& text);
SuiteConfig load_config_file(const std::string& path);

/// The built-in configuration (same content as configs/full.json).
const std::string& builtin_config_text();

} // namespace carnot

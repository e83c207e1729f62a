#include "carnot/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace carnot {

using nlohmann::json;

namespace {

const std::set<std::string> kKinds = {
    "gauss_green",  "green_first",    "green_second", "half_density",
    "tv_bound",     "trace_locality", "trace_bound",  "divergence_free",
    "commutation",  "right_average",  "haar_scaling", "orientation",
};

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw std::invalid_argument("config: " + path + ": " + what);
}

void require_key(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) bad(path, "missing key '" + std::string(key) + "'");
}

void check_decreasing(const json& ladder, const std::string& path) {
    if (!ladder.is_array() || ladder.empty()) bad(path, "expected a non-empty array");
    double prev = 1e300;
    for (const auto& e : ladder) {
        double v = e.get<double>();
        if (!(v > 0.0)) bad(path, "entries must be positive");
        if (!(v < prev)) bad(path, "entries must be strictly decreasing");
        prev = v;
    }
}

void validate_scenario(const ScenarioSpec& s) {
    const std::string path = "scenarios/" + s.name;
    if (!kKinds.count(s.kind)) bad(path, "unknown kind '" + s.kind + "'");
    const json& p = s.params;
    auto need = [&](const char* key) { require_key(p, key, path); };

    if (s.kind == "gauss_green" || s.kind == "orientation") {
        need("field");
        need("domain");
        need("boundary_resolution");
    } else if (s.kind == "green_first") {
        need("u");
        need("v");
        need("domain");
        need("boundary_resolution");
    } else if (s.kind == "green_second") {
        need("u");
        need("v");
        need("domain");
        need("boundary_resolution");
    } else if (s.kind == "half_density") {
        need("domain");
        need("eps_ladder");
        check_decreasing(p.at("eps_ladder"), path + "/eps_ladder");
        need("boundary_resolution");
    } else if (s.kind == "tv_bound") {
        need("domain");
        need("eps_list");
        check_decreasing(p.at("eps_list"), path + "/eps_list");
        need("boundary_resolution");
    } else if (s.kind == "trace_locality") {
        need("field");
        need("d1");
        need("d2");
        need("patch");
        need("boundary_resolution");
    } else if (s.kind == "trace_bound") {
        need("field");
        need("domain");
        need("boundary_resolution");
    } else if (s.kind == "divergence_free") {
        need("bumps");
        if (!p.at("bumps").is_array() || p.at("bumps").empty())
            bad(path, "bumps must be a non-empty array");
    } else if (s.kind == "commutation") {
        need("field");
        need("eps");
        need("point");
    } else if (s.kind == "right_average") {
        need("field");
        need("point");
        need("eps_ladder");
        check_decreasing(p.at("eps_ladder"), path + "/eps_ladder");
    } else if (s.kind == "haar_scaling") {
        need("samples");
    }
}

} // namespace

std::vector<const ScenarioSpec*> SuiteConfig::select(const std::string& suite) const {
    std::vector<const ScenarioSpec*> out;
    if (suite == "full" && !suites.count("full")) {
        for (const auto& s : scenarios) out.push_back(&s);
        return out;
    }
    auto it = suites.find(suite);
    if (it == suites.end())
        throw std::invalid_argument("config: unknown suite '" + suite + "'");
    for (const auto& name : it->second) {
        const ScenarioSpec* found = nullptr;
        for (const auto& s : scenarios)
            if (s.name == name) { found = &s; break; }
        if (!found)
            throw std::invalid_argument("config: suite '" + suite +
                                        "' references unknown scenario '" + name + "'");
        out.push_back(found);
    }
    return out;
}

SuiteConfig load_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    SuiteConfig cfg;
    cfg.raw = j;
    if (!j.contains("seed")) bad("seed", "a seed is required (no wall-clock defaults)");
    cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("group")) {
        if (j.at("group").is_string()) cfg.group = j.at("group").get<std::string>();
        else cfg.inline_group = j.at("group");
    }
    cfg.norm = j.value("norm", json{{"kind", "gauge"}}).value("kind", "gauge");
    if (j.contains("mollifier")) {
        cfg.mollifier_profile = j.at("mollifier").value("profile", "linear");
        cfg.mollifier_samples = j.at("mollifier").value("samples", 400000l);
    }
    if (j.contains("output")) {
        cfg.csv_name = j.at("output").value("csv", "report.csv");
        cfg.json_name = j.at("output").value("json", "report.json");
    }
    if (!j.contains("scenarios") || !j.at("scenarios").is_array() || j.at("scenarios").empty())
        bad("scenarios", "a non-empty scenario array is required");
    std::set<std::string> seen;
    for (const auto& sj : j.at("scenarios")) {
        ScenarioSpec s;
        require_key(sj, "name", "scenarios[]");
        require_key(sj, "kind", "scenarios[]");
        s.name = sj.at("name").get<std::string>();
        s.kind = sj.at("kind").get<std::string>();
        s.params = sj;
        if (!seen.insert(s.name).second) bad("scenarios/" + s.name, "duplicate scenario name");
        validate_scenario(s);
        cfg.scenarios.push_back(std::move(s));
    }
    if (j.contains("suites")) {
        for (const auto& [name, list] : j.at("suites").items()) {
            std::vector<std::string> names;
            for (const auto& n : list) names.push_back(n.get<std::string>());
            cfg.suites[name] = std::move(names);
        }
    }
    // Cross-check suite references now, before any computation.
    for (const auto& [name, _] : cfg.suites) cfg.select(name);
    return cfg;
}

SuiteConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config_text(ss.str());
}

} // namespace carnot

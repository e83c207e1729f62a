// Scenario runner: verifies divergence-theorem style identities on stratified
// groups from a JSON configuration and writes CSV + JSON reports.
//
// Exit codes: 0 all scenarios pass, 1 at least one failed, 2 usage/config error.

#include "carnot/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Stratified-group calculus verification runner"};

    std::string config_path;
    std::string suite = "full";
    std::string out_dir = ".";
    std::string describe_name;
    uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    bool list = false;

    app.add_option("--config", config_path, "Configuration file (defaults to the built-in one)");
    app.add_option("--suite", suite, "Suite name: smoke, full, or one defined in the config");
    app.add_option("--out", out_dir, "Output directory for reports");
    app.add_option("--seed", seed, "Override the config seed")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--threads", threads, "Scenario-level parallelism (or CGG_THREADS)");
    app.add_flag("--list-presets", list, "List registered presets and exit");
    app.add_option("--describe", describe_name, "Describe a preset and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list) {
            std::cout << carnot::list_presets();
            return 0;
        }
        if (!describe_name.empty()) {
            std::cout << carnot::describe_preset(describe_name);
            return 0;
        }

        carnot::SuiteConfig cfg = config_path.empty()
                                      ? carnot::load_config_text(carnot::builtin_config_text())
                                      : carnot::load_config_file(config_path);

        carnot::RunOptions opt;
        opt.suite = suite;
        if (seed_set) opt.seed = seed;
        if (threads > 0) {
            opt.threads = threads;
        } else if (const char* env = std::getenv("CGG_THREADS")) {
            opt.threads = std::max(1, std::atoi(env));
        }

        auto result = carnot::run_suite(cfg, opt);

        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        {
            std::ofstream csv(fs::path(out_dir) / cfg.csv_name, std::ios::binary);
            csv << result.csv;
        }
        {
            std::ofstream js(fs::path(out_dir) / cfg.json_name, std::ios::binary);
            js << result.json_report.dump(2) << "\n";
        }

        int passed = 0;
        for (const auto& r : result.reports) passed += r.pass ? 1 : 0;
        std::printf("%d/%zu checks passed; reports in %s\n", passed, result.reports.size(),
                    out_dir.c_str());
        for (const auto& r : result.reports)
            if (!r.pass)
                std::printf("FAIL %s: lhs=%.6g rhs=%.6g rel=%.3g (%s)\n", r.scenario.c_str(),
                            r.lhs, r.rhs, r.rel_residual, r.meta.c_str());
        return result.all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

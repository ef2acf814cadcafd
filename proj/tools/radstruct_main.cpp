#include "radstruct/commands.hpp"
#include "radstruct/outcome.hpp"

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

int parse_strategies(const std::vector<std::string>& ids,
                     std::vector<radstruct::StrategyKind>& out) {
    for (const std::string& id : ids) {
        auto kind = radstruct::strategy_from_id(id);
        if (!kind) {
            std::cerr << "error: unknown strategy '" << id
                      << "' (expected s, s_then_c, c_then_s, s_plus_c, s_plus_c_fi)\n";
            return radstruct::kExitConfig;
        }
        out.push_back(*kind);
    }
    return radstruct::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Restructure radiology reports into a concise organ-ordered template via a "
                 "local LLM, with validation, error classification, and statistics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Optional key=value config file");

    // run ------------------------------------------------------------------
    auto* run = app.add_subcommand("run", "Run strategies over a corpus and emit results + stats");
    radstruct::RunConfig config;
    std::vector<std::string> strategy_ids;
    std::string mock_behavior;
    std::int64_t seed_value = 0;
    bool seed_given = false;

    run->add_option("--corpus", config.corpus_path, "Corpus file (JSONL or CSV)")
        ->required()
        ->envname("RADSTRUCT_CORPUS");
    run->add_option("--format", config.format, "Corpus format: jsonl|csv (default: by extension)");
    run->add_option("--strategies", strategy_ids,
                    "Strategies to run (default: all five)")
        ->delimiter(',');
    auto* endpoint_opt = run->add_option("--endpoint", config.endpoint,
                                         "Completion server URL (live mode)")
                             ->envname("RADSTRUCT_ENDPOINT");
    run->add_option("--model", config.model, "Model id sent to the server")
        ->envname("RADSTRUCT_MODEL")
        ->capture_default_str();
    auto* mock_opt = run->add_option("--mock", mock_behavior,
                                     "Mock backend: faithful|garbage|letter_impressions|fail_then_fix");
    mock_opt->excludes(endpoint_opt);
    run->add_option("--workers", config.workers, "Worker thread count")
        ->envname("RADSTRUCT_WORKERS")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    run->add_option("--out", config.out_dir, "Output directory")
        ->envname("RADSTRUCT_OUT")
        ->capture_default_str();
    run->add_option("--template-version", config.template_version, "Template asset version")
        ->capture_default_str();
    run->add_option("--prompt-version", config.prompt_version, "Prompt asset version")
        ->capture_default_str();
    run->add_option("--assets-dir", config.assets_dir,
                    "Directory holding template/ and prompts/")
        ->envname("RADSTRUCT_ASSETS")
        ->capture_default_str();
    run->add_option("--timeout-secs", config.timeout_secs, "HTTP timeout in seconds")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    auto* seed_opt = run->add_option("--seed", seed_value, "Seed forwarded to the server");

    // stats ----------------------------------------------------------------
    auto* stats = app.add_subcommand("stats", "Recompute tables and figure bundles from results");
    std::string results_path;
    std::string stats_out = "out";
    stats->add_option("--results", results_path, "results.jsonl from a previous run")->required();
    stats->add_option("--out", stats_out, "Output directory")->capture_default_str();

    // validate --------------------------------------------------------------
    auto* validate = app.add_subcommand("validate", "Check a rendered report against the template");
    std::string report_path;
    std::string validate_template = "v1";
    std::string validate_assets = ".";
    validate->add_option("report", report_path, "Report text file")->required();
    validate->add_option("--template-version", validate_template, "Template asset version")
        ->capture_default_str();
    validate->add_option("--assets-dir", validate_assets, "Directory holding template/")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? radstruct::kExitOk : radstruct::kExitConfig;
    }

    seed_given = seed_opt->count() > 0;
    if (seed_given) config.seed = seed_value;

    if (run->parsed()) {
        if (!mock_behavior.empty()) {
            auto behavior = radstruct::mock_behavior_from_id(mock_behavior);
            if (!behavior) {
                std::cerr << "error: unknown mock behavior '" << mock_behavior << "'\n";
                return radstruct::kExitConfig;
            }
            config.mock = *behavior;
        }
        if (int rc = parse_strategies(strategy_ids, config.strategies); rc != radstruct::kExitOk)
            return rc;
        return radstruct::cmd_run(config, std::cout);
    }
    if (stats->parsed()) return radstruct::cmd_stats(results_path, stats_out, std::cout);
    if (validate->parsed())
        return radstruct::cmd_validate(report_path, validate_template, validate_assets, std::cout);
    return radstruct::kExitConfig;
}

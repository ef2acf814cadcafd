#include "radstruct/commands.hpp"

#include "radstruct/errors.hpp"
#include "radstruct/gateway.hpp"
#include "radstruct/stats.hpp"
#include "radstruct/strategies.hpp"
#include "text_util.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>

#include "json.hpp"

namespace radstruct {

namespace {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xCBF29CE484222325ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001B3ull;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
    return buffer;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

std::vector<Strategy> selected_strategies(const RunConfig& config) {
    if (config.strategies.empty()) return all_strategies();
    std::vector<Strategy> selected;
    for (StrategyKind kind : kAllStrategyKinds) {
        for (StrategyKind wanted : config.strategies) {
            if (wanted == kind) {
                selected.push_back(strategy_for(kind));
                break;
            }
        }
    }
    return selected;
}

std::string canonical_config_string(const RunConfig& config,
                                    const std::vector<Strategy>& strategies) {
    nlohmann::ordered_json j;
    j["corpus"] = config.corpus_path;
    j["format"] = config.format;
    nlohmann::ordered_json ids = nlohmann::ordered_json::array();
    for (const Strategy& strategy : strategies) ids.push_back(strategy_id(strategy.kind));
    j["strategies"] = std::move(ids);
    j["endpoint"] = config.endpoint;
    j["model"] = config.model;
    j["mock"] = config.mock ? mock_behavior_id(*config.mock) : "";
    j["template_version"] = config.template_version;
    j["prompt_version"] = config.prompt_version;
    j["timeout_secs"] = config.timeout_secs;
    if (config.seed) j["seed"] = *config.seed;
    return j.dump();
}

void write_manifest(const RunConfig& config, const std::vector<Strategy>& strategies,
                    const std::filesystem::path& out_dir) {
    nlohmann::ordered_json manifest;
    manifest["config_hash"] = hex64(fnv1a64(canonical_config_string(config, strategies)));
    manifest["corpus"] = config.corpus_path;
    manifest["format"] = config.format.empty() ? "jsonl" : config.format;
    nlohmann::ordered_json ids = nlohmann::ordered_json::array();
    for (const Strategy& strategy : strategies) ids.push_back(strategy_id(strategy.kind));
    manifest["strategies"] = std::move(ids);
    manifest["mode"] = config.mock ? "mock" : "live";
    manifest["mock_behavior"] = config.mock ? mock_behavior_id(*config.mock) : "";
    manifest["endpoint"] = config.mock ? "" : config.endpoint;
    manifest["model"] = config.model;
    manifest["template_version"] = config.template_version;
    manifest["prompt_version"] = config.prompt_version;
    manifest["workers"] = config.workers;
    manifest["timeout_secs"] = config.timeout_secs;
    if (config.seed)
        manifest["seed"] = *config.seed;
    else
        manifest["seed"] = nullptr;
    write_text_file(out_dir / "run_manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

CorpusFormat resolve_format(const std::string& format, const std::string& path) {
    if (format == "jsonl") return CorpusFormat::Jsonl;
    if (format == "csv") return CorpusFormat::Csv;
    if (format.empty()) {
        return path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? CorpusFormat::Csv
                                                                          : CorpusFormat::Jsonl;
    }
    throw ConfigError("unknown corpus format '" + format + "' (expected jsonl or csv)");
}

void write_stats_outputs(const std::vector<PipelineOutcome>& outcomes,
                         const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    write_text_file(dir / "table1.csv", stats::to_csv(stats::error_free_table(outcomes)));
    write_text_file(dir / "table2.csv", stats::to_csv(stats::over_100_table(outcomes)));
    write_text_file(dir / "fig2.json", stats::fig2_bundle(outcomes).dump(2) + "\n");
    write_text_file(dir / "fig3.json", stats::fig3_bundle(outcomes).dump(2) + "\n");
    write_text_file(dir / "fig4.json", stats::fig4_bundle(outcomes).dump(2) + "\n");
}

int cmd_run(const RunConfig& config, std::ostream& log) {
    if (config.corpus_path.empty()) {
        log << "error: no corpus given\n";
        return kExitConfig;
    }
    if (config.mock && !config.endpoint.empty()) {
        log << "error: --mock and --endpoint are mutually exclusive\n";
        return kExitConfig;
    }
    if (config.workers < 1) {
        log << "error: workers must be >= 1\n";
        return kExitConfig;
    }

    try {
        const TemplateSpec tpl = TemplateSpec::resolve(config.template_version, config.assets_dir);
        const PromptSet prompts = PromptSet::resolve(config.prompt_version, config.assets_dir);
        validate_prompt_set(prompts);
        const std::vector<Strategy> strategies = selected_strategies(config);

        const Corpus corpus =
            load_corpus(config.corpus_path, resolve_format(config.format, config.corpus_path));
        log << "loaded " << corpus.reports.size() << " reports from " << config.corpus_path
            << "\n";

        std::unique_ptr<CompletionGateway> gateway;
        if (config.mock) {
            gateway = std::make_unique<MockGateway>(*config.mock, tpl);
        } else {
            HttpGatewayOptions options;
            if (!config.endpoint.empty()) options.endpoint = config.endpoint;
            options.timeout = std::chrono::seconds(config.timeout_secs);
            auto http = std::make_unique<HttpGateway>(options);
            if (!http->health_check()) {
                log << "error: endpoint " << options.endpoint << " is unreachable\n";
                return kExitTransport;
            }
            gateway = std::move(http);
        }

        RunOptions run_options;
        run_options.model = config.model;
        run_options.seed = config.seed;
        run_options.workers = config.workers;

        const std::vector<PipelineOutcome> outcomes =
            run_corpus(corpus, strategies, *gateway, prompts, tpl, run_options);

        std::filesystem::create_directories(config.out_dir);
        persist_outcomes(outcomes, (std::filesystem::path(config.out_dir) / "results.jsonl").string());
        write_manifest(config, strategies, config.out_dir);
        write_stats_outputs(outcomes, config.out_dir);

        std::size_t ok = 0, format_errors = 0, transport_errors = 0;
        for (const PipelineOutcome& outcome : outcomes) {
            switch (outcome.status) {
                case OutcomeStatus::Ok: ++ok; break;
                case OutcomeStatus::FormatError: ++format_errors; break;
                case OutcomeStatus::TransportError: ++transport_errors; break;
            }
        }
        log << "outcomes: " << outcomes.size() << " (" << ok << " ok, " << format_errors
            << " format errors, " << transport_errors << " transport errors)\n";
        log << "results written to " << config.out_dir << "\n";

        if (!outcomes.empty() && transport_errors == outcomes.size()) {
            log << "error: every pair failed at the transport level\n";
            return kExitTransport;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DataError& e) {
        log << "data error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError& e) {
        log << "io error: " << e.what() << "\n";
        return kExitIo;
    }
}

int cmd_stats(const std::string& results_path, const std::string& out_dir, std::ostream& log) {
    try {
        const std::vector<PipelineOutcome> outcomes = load_outcomes(results_path);
        std::filesystem::create_directories(out_dir);
        write_stats_outputs(outcomes, out_dir);
        log << "recomputed tables and figure bundles for " << outcomes.size() << " outcomes in "
            << out_dir << "\n";
        return kExitOk;
    } catch (const DataError& e) {
        log << "data error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError& e) {
        log << "io error: " << e.what() << "\n";
        return kExitIo;
    }
}

int cmd_validate(const std::string& report_path, const std::string& template_version,
                 const std::string& assets_dir, std::ostream& log) {
    try {
        const TemplateSpec tpl = TemplateSpec::resolve(template_version, assets_dir);
        std::ifstream in(report_path, std::ios::binary);
        if (!in) throw IoError("cannot open '" + report_path + "' for reading");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

        const ParseResult result = parse_structured(tpl, text);
        if (result.ok()) {
            log << "OK\n";
        } else {
            log << "FAIL " << parse_reason_name(result.failure->reason) << " at line "
                << result.failure->line << ": " << result.failure->message << "\n";
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        log << "io error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace radstruct

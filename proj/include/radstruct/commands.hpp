#pragma once

#include "radstruct/corpus.hpp"
#include "radstruct/mock_gateway.hpp"
#include "radstruct/outcome.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace radstruct {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitTransport = 3;
inline constexpr int kExitIo = 4;

struct RunConfig {
    std::string corpus_path;
    std::string format;  // "jsonl", "csv", or "" = infer from extension
    std::vector<StrategyKind> strategies;  // empty = all five
    std::string endpoint;                  // live mode
    std::string model = "mixtral:8x7b";
    std::optional<MockBehavior> mock;      // mock mode; exclusive with endpoint
    int workers = 1;
    std::string out_dir = "out";
    std::string template_version = "v1";
    std::string prompt_version = "v1";
    std::string assets_dir = ".";
    int timeout_secs = 300;
    std::optional<std::int64_t> seed;
};

CorpusFormat resolve_format(const std::string& format, const std::string& path);

// Full batch: load corpus, execute the selected strategies, write
// results.jsonl, run_manifest.json, both summary CSVs and the three figure
// bundles under out_dir. FormatErrors are data, never a nonzero exit;
// configuration problems exit 2, an unreachable endpoint or an
// all-transport-failed batch exits 3, I/O failures exit 4.
int cmd_run(const RunConfig& config, std::ostream& log);

// Recomputes the stats phase from a persisted results file. Pure function
// of the file: identical outputs to the stats phase of the originating run.
int cmd_stats(const std::string& results_path, const std::string& out_dir, std::ostream& log);

// Parse verdict for a rendered report file: prints OK or the failure
// reason with its offending line.
int cmd_validate(const std::string& report_path, const std::string& template_version,
                 const std::string& assets_dir, std::ostream& log);

// The stats emission shared by cmd_run and cmd_stats.
void write_stats_outputs(const std::vector<PipelineOutcome>& outcomes,
                         const std::string& out_dir);

}  // namespace radstruct

#pragma once

#include "radstruct/corpus.hpp"
#include "radstruct/gateway.hpp"
#include "radstruct/outcome.hpp"
#include "radstruct/prompts.hpp"
#include "radstruct/report_template.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace radstruct {

enum class StageGoal { Structure, Condense, StructureAndCondense };
enum class StageScope { WholeReport, FindingsOnly, ImpressionsOnly };

// What shape the stage's output must satisfy. FreeText stages are not
// parse-checked and never consume a fix attempt.
enum class StageOutputForm { FreeText, FullReport, SectionsOnly, ImpressionsOnly };

struct StageSpec {
    StageGoal goal = StageGoal::Structure;
    StageScope scope = StageScope::WholeReport;
    std::string prompt_asset;  // id within the PromptSet
    StageOutputForm output_form = StageOutputForm::FullReport;
};

// A fixed plan of one or two LLM calls.
struct Strategy {
    StrategyKind kind = StrategyKind::S;
    std::vector<StageSpec> stages;
};

// The five strategies in fixed order: [S], [S >> C], [C >> S], [S + C],
// [S + C (F, I)].
const std::vector<Strategy>& all_strategies();
const Strategy& strategy_for(StrategyKind kind);

// Prompt text for one stage: asset text with `{template}` (when present)
// replaced by the skeleton and `{report}` by the input. Deterministic.
// Throws ConfigError on an unresolvable asset and std::invalid_argument on
// empty input.
std::string build_prompt(const StageSpec& stage, const PromptSet& prompts,
                         const TemplateSpec& tpl, std::string_view input_text);

// One corrective attempt: resubmits the bad output together with the
// original instructions as a single combined prompt and returns the new
// completion verbatim.
std::string fix_output(std::string_view bad_output, std::string_view original_instructions,
                       const PromptSet& prompts, CompletionGateway& llm,
                       const std::string& model, std::optional<std::int64_t> seed);

struct RunOptions {
    std::string model = "mixtral:8x7b";
    std::optional<std::int64_t> seed;
    int workers = 1;
    int transport_retries = 1;  // per (report, strategy) pair
};

// The labeled FINDINGS/IMPRESSIONS text handed to whole-report stages.
std::string assemble_report_text(const RawReport& report);

// Executes the strategy's stages in order. Structural stages get exactly
// one fix attempt on parse failure; a still-unparseable output classifies
// the outcome as a FormatError. Throws TransportError on gateway faults
// (the runner retries those; they are never classified).
PipelineOutcome run_strategy(const RawReport& report, const Strategy& strategy,
                             CompletionGateway& llm, const PromptSet& prompts,
                             const TemplateSpec& tpl, const RunOptions& options);

// One outcome per (report, strategy) pair, ordered report-major then by the
// fixed strategy order, regardless of execution parallelism. Per-pair
// transport failures become TransportError records after the retry budget;
// the batch never aborts.
std::vector<PipelineOutcome> run_corpus(const Corpus& corpus,
                                        const std::vector<Strategy>& strategies,
                                        CompletionGateway& llm, const PromptSet& prompts,
                                        const TemplateSpec& tpl, const RunOptions& options);

// Serial reference implementation; must produce output identical to
// run_corpus for any worker count. Kept for tests and the benchmark.
std::vector<PipelineOutcome> run_corpus_serial(const Corpus& corpus,
                                               const std::vector<Strategy>& strategies,
                                               CompletionGateway& llm, const PromptSet& prompts,
                                               const TemplateSpec& tpl,
                                               const RunOptions& options);

}  // namespace radstruct

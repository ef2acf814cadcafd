#include "radstruct/strategies.hpp"

#include "radstruct/metrics.hpp"
#include "text_util.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace radstruct {

const std::vector<Strategy>& all_strategies() {
    static const std::vector<Strategy> strategies = {
        {StrategyKind::S,
         {{StageGoal::Structure, StageScope::WholeReport, "s_structure",
           StageOutputForm::FullReport}}},
        {StrategyKind::SThenC,
         {{StageGoal::Structure, StageScope::WholeReport, "s_then_c_structure",
           StageOutputForm::FullReport},
          {StageGoal::Condense, StageScope::WholeReport, "s_then_c_condense",
           StageOutputForm::FullReport}}},
        {StrategyKind::CThenS,
         {{StageGoal::Condense, StageScope::WholeReport, "c_then_s_condense",
           StageOutputForm::FreeText},
          {StageGoal::Structure, StageScope::WholeReport, "c_then_s_structure",
           StageOutputForm::FullReport}}},
        {StrategyKind::SPlusC,
         {{StageGoal::StructureAndCondense, StageScope::WholeReport, "s_plus_c_combined",
           StageOutputForm::FullReport}}},
        {StrategyKind::SPlusCFI,
         {{StageGoal::StructureAndCondense, StageScope::FindingsOnly, "s_plus_c_fi_findings",
           StageOutputForm::SectionsOnly},
          {StageGoal::StructureAndCondense, StageScope::ImpressionsOnly,
           "s_plus_c_fi_impressions", StageOutputForm::ImpressionsOnly}}},
    };
    return strategies;
}

const Strategy& strategy_for(StrategyKind kind) {
    for (const Strategy& strategy : all_strategies())
        if (strategy.kind == kind) return strategy;
    throw std::logic_error("unknown strategy kind");
}

std::string build_prompt(const StageSpec& stage, const PromptSet& prompts,
                         const TemplateSpec& tpl, std::string_view input_text) {
    if (detail::trim(input_text).empty())
        throw std::invalid_argument("build_prompt: input text is empty");
    const std::string& asset = prompts.get(stage.prompt_asset);
    std::map<std::string, std::string> values;
    values["template"] = template_skeleton(tpl);
    values["report"] = std::string(input_text);
    return substitute_placeholders(asset, values);
}

namespace {

CompletionRequest make_request(const std::string& model, std::string prompt,
                               std::optional<std::int64_t> seed) {
    CompletionRequest request;
    request.model = model;
    request.prompt = std::move(prompt);
    request.seed = seed;
    return request;
}

ParseMode parse_mode_for(StageOutputForm form) {
    switch (form) {
        case StageOutputForm::FullReport: return ParseMode::FullReport;
        case StageOutputForm::SectionsOnly: return ParseMode::SectionsOnly;
        case StageOutputForm::ImpressionsOnly: return ParseMode::ImpressionsOnly;
        case StageOutputForm::FreeText: break;
    }
    throw std::logic_error("free-text stages are not parse-checked");
}

struct StageRun {
    std::string text;      // final accepted (or final failing) output
    int attempts = 1;      // 1 or 2
    bool parsed = true;    // false only for checked stages that still fail
    ParseResult parse;     // meaningful for checked stages
};

}  // namespace

std::string fix_output(std::string_view bad_output, std::string_view original_instructions,
                       const PromptSet& prompts, CompletionGateway& llm,
                       const std::string& model, std::optional<std::int64_t> seed) {
    std::map<std::string, std::string> values;
    values["bad_output"] = std::string(bad_output);
    values["instructions"] = std::string(original_instructions);
    std::string prompt = substitute_placeholders(prompts.get("fix"), values);
    return llm.complete(make_request(model, std::move(prompt), seed)).text;
}

std::string assemble_report_text(const RawReport& report) {
    return "FINDINGS:\n" + report.findings + "\n\nIMPRESSIONS:\n" + report.impressions;
}

namespace {

// One stage: prompt, complete, and for structural output forms parse with a
// single fix attempt on failure.
StageRun execute_stage(const StageSpec& stage, std::string_view input, CompletionGateway& llm,
                       const PromptSet& prompts, const TemplateSpec& tpl,
                       const RunOptions& options) {
    StageRun run;
    std::string prompt = build_prompt(stage, prompts, tpl, input);
    run.text = llm.complete(make_request(options.model, prompt, options.seed)).text;

    if (stage.output_form == StageOutputForm::FreeText) return run;

    const ParseMode mode = parse_mode_for(stage.output_form);
    run.parse = parse_structured(tpl, run.text, mode);
    if (!run.parse.ok()) {
        run.text = fix_output(run.text, prompt, prompts, llm, options.model, options.seed);
        run.attempts = 2;
        run.parse = parse_structured(tpl, run.text, mode);
    }
    run.parsed = run.parse.ok();
    return run;
}

PipelineOutcome format_error_outcome(PipelineOutcome outcome, const TemplateSpec& tpl,
                                     const StageRun& failed, StageOutputForm form) {
    outcome.status = OutcomeStatus::FormatError;
    outcome.error = classify_error(tpl, failed.text, *failed.parse.failure, failed.attempts,
                                   parse_mode_for(form));
    return outcome;
}

}  // namespace

PipelineOutcome run_strategy(const RawReport& report, const Strategy& strategy,
                             CompletionGateway& llm, const PromptSet& prompts,
                             const TemplateSpec& tpl, const RunOptions& options) {
    PipelineOutcome outcome;
    outcome.report_id = report.id;
    outcome.radiologist = report.radiologist;
    outcome.strategy = strategy.kind;
    outcome.words_in_findings = count_words(report.findings);
    outcome.words_in_impressions = count_words(report.impressions);
    outcome.words_in = outcome.words_in_findings + outcome.words_in_impressions;

    const std::string report_text = assemble_report_text(report);

    StructuredReport merged;
    bool have_structured = false;

    if (strategy.kind == StrategyKind::SPlusCFI) {
        // Both stages see the whole report; the findings stage supplies the
        // sections, the impressions stage the list. Each stage's irrelevant
        // half is ignored.
        StageRun findings_run =
            execute_stage(strategy.stages[0], report_text, llm, prompts, tpl, options);
        outcome.raw_outputs.push_back(findings_run.text);
        outcome.stage_attempts.push_back(findings_run.attempts);
        if (!findings_run.parsed)
            return format_error_outcome(std::move(outcome), tpl, findings_run,
                                        strategy.stages[0].output_form);

        StageRun impressions_run =
            execute_stage(strategy.stages[1], report_text, llm, prompts, tpl, options);
        outcome.raw_outputs.push_back(impressions_run.text);
        outcome.stage_attempts.push_back(impressions_run.attempts);
        if (!impressions_run.parsed)
            return format_error_outcome(std::move(outcome), tpl, impressions_run,
                                        strategy.stages[1].output_form);

        merged.sections = std::move(findings_run.parse.report->sections);
        merged.impressions = std::move(impressions_run.parse.report->impressions);
        have_structured = true;
    } else {
        std::string current = report_text;
        for (const StageSpec& stage : strategy.stages) {
            StageRun run = execute_stage(stage, current, llm, prompts, tpl, options);
            outcome.raw_outputs.push_back(run.text);
            outcome.stage_attempts.push_back(run.attempts);
            if (!run.parsed)
                return format_error_outcome(std::move(outcome), tpl, run, stage.output_form);
            if (stage.output_form != StageOutputForm::FreeText) {
                merged = std::move(*run.parse.report);
                have_structured = true;
            }
            current = outcome.raw_outputs.back();
        }
    }

    if (!have_structured)
        throw std::logic_error("strategy produced no structural stage");

    outcome.status = OutcomeStatus::Ok;
    const std::string sections_text = render_sections(tpl, merged);
    const std::string impressions_text = render_impressions(merged);
    outcome.structured_text = sections_text + impressions_text;
    outcome.words_out_sections = count_words(sections_text);
    outcome.words_out_impressions = count_words(impressions_text);
    outcome.words_out = outcome.words_out_sections + outcome.words_out_impressions;
    outcome.score = conciseness(outcome.words_out, outcome.words_in);
    outcome.over_100 = outcome.score->over_100();
    return outcome;
}

namespace {

PipelineOutcome run_pair(const RawReport& report, const Strategy& strategy,
                         CompletionGateway& llm, const PromptSet& prompts,
                         const TemplateSpec& tpl, const RunOptions& options) {
    int tries = options.transport_retries + 1;
    while (true) {
        try {
            return run_strategy(report, strategy, llm, prompts, tpl, options);
        } catch (const TransportError& e) {
            if (--tries > 0) continue;
            PipelineOutcome outcome;
            outcome.report_id = report.id;
            outcome.radiologist = report.radiologist;
            outcome.strategy = strategy.kind;
            outcome.status = OutcomeStatus::TransportError;
            outcome.transport_message = e.what();
            outcome.words_in_findings = count_words(report.findings);
            outcome.words_in_impressions = count_words(report.impressions);
            outcome.words_in = outcome.words_in_findings + outcome.words_in_impressions;
            return outcome;
        } catch (const std::exception& e) {
            PipelineOutcome outcome;
            outcome.report_id = report.id;
            outcome.radiologist = report.radiologist;
            outcome.strategy = strategy.kind;
            outcome.status = OutcomeStatus::TransportError;
            outcome.transport_message = std::string("internal error: ") + e.what();
            return outcome;
        }
    }
}

}  // namespace

std::vector<PipelineOutcome> run_corpus_serial(const Corpus& corpus,
                                               const std::vector<Strategy>& strategies,
                                               CompletionGateway& llm, const PromptSet& prompts,
                                               const TemplateSpec& tpl,
                                               const RunOptions& options) {
    std::vector<PipelineOutcome> outcomes;
    outcomes.reserve(corpus.reports.size() * strategies.size());
    for (const RawReport& report : corpus.reports)
        for (const Strategy& strategy : strategies)
            outcomes.push_back(run_pair(report, strategy, llm, prompts, tpl, options));
    return outcomes;
}

std::vector<PipelineOutcome> run_corpus(const Corpus& corpus,
                                        const std::vector<Strategy>& strategies,
                                        CompletionGateway& llm, const PromptSet& prompts,
                                        const TemplateSpec& tpl, const RunOptions& options) {
    const std::size_t pair_count = corpus.reports.size() * strategies.size();
    std::vector<PipelineOutcome> outcomes(pair_count);
    const int workers = std::max(1, options.workers);

    // Pairs are independent; each thread writes only its own slot, so the
    // joined result is identical to the serial order for any worker count.
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(pair_count); ++i) {
        const std::size_t report_index = static_cast<std::size_t>(i) / strategies.size();
        const std::size_t strategy_index = static_cast<std::size_t>(i) % strategies.size();
        outcomes[static_cast<std::size_t>(i)] =
            run_pair(corpus.reports[report_index], strategies[strategy_index], llm, prompts, tpl,
                     options);
    }
    return outcomes;
}

}  // namespace radstruct

#pragma once

#include "radstruct/metrics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace radstruct {

// The five prompting strategies, in the fixed order used everywhere
// (result files, tables, figure bundles).
enum class StrategyKind { S, SThenC, CThenS, SPlusC, SPlusCFI };

inline constexpr StrategyKind kAllStrategyKinds[] = {
    StrategyKind::S,      StrategyKind::SThenC, StrategyKind::CThenS,
    StrategyKind::SPlusC, StrategyKind::SPlusCFI,
};

const char* strategy_id(StrategyKind kind);       // "s", "s_then_c", ...
const char* strategy_display(StrategyKind kind);  // "[S]", "[S >> C]", ...
std::optional<StrategyKind> strategy_from_id(std::string_view id);

enum class OutcomeStatus { Ok, FormatError, TransportError };

const char* outcome_status_id(OutcomeStatus status);
std::optional<OutcomeStatus> outcome_status_from_id(std::string_view id);

// Result of running one strategy on one report.
struct PipelineOutcome {
    std::string report_id;
    std::string radiologist;
    StrategyKind strategy = StrategyKind::S;
    OutcomeStatus status = OutcomeStatus::Ok;

    std::optional<ErrorKind> error;  // set iff status == FormatError
    std::string transport_message;   // set iff status == TransportError

    std::vector<std::string> raw_outputs;  // accepted text per executed stage
    std::vector<int> stage_attempts;       // 1 or 2 per executed stage

    std::string structured_text;  // canonical render, set iff status == Ok

    // Word counts. Inputs are counted on the bare findings + impressions
    // text; outputs on the canonical render. Sub-counts keep both the joint
    // and the per-half views derivable.
    std::int64_t words_in = 0;
    std::int64_t words_in_findings = 0;
    std::int64_t words_in_impressions = 0;
    std::int64_t words_out = 0;              // set iff status == Ok
    std::int64_t words_out_sections = 0;
    std::int64_t words_out_impressions = 0;

    std::optional<ConcisenessScore> score;  // set iff status == Ok
    bool over_100 = false;                  // score.value() > 100

    // Worst per-stage attempt count: 1 clean, 2 when any stage needed the
    // fix attempt, 0 for transport records.
    int attempts() const;

    bool operator==(const PipelineOutcome&) const = default;
};

// One JSON object per outcome, in list order; reloading yields structurally
// equal outcomes. Schema in docs/formats.md.
void persist_outcomes(const std::vector<PipelineOutcome>& outcomes, const std::string& path);
std::vector<PipelineOutcome> load_outcomes(const std::string& path);

}  // namespace radstruct

#pragma once

#include "radstruct/outcome.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace radstruct::stats {

struct KWResult {
    double H = 0.0;
    int df = 0;
    double p = 1.0;
};

// Kruskal-Wallis H with average ranks and tie correction; p from the
// chi-square survival function with k-1 df. All-tied input degenerates to
// H = 0, p = 1. Throws std::invalid_argument on fewer than two groups or an
// empty group.
KWResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

struct DunnResult {
    std::size_t group_a = 0;
    std::size_t group_b = 0;
    double z = 0.0;
    double p_raw = 1.0;
    double p_adj = 1.0;  // min(1, m * p_raw)
};

// Dunn's rank-based pairwise post-hoc test with tie correction; p_adj is
// Bonferroni-clamped with factor m. Same preconditions as kruskal_wallis.
std::vector<DunnResult> dunn_pairwise(const std::vector<std::vector<double>>& groups,
                                      std::int64_t bonferroni_m);

// C(n_strategies, 2) * n_radiologists. Throws std::invalid_argument on
// invalid counts.
std::int64_t bonferroni_factor(int n_strategies, int n_radiologists);

// min(1, m * p_raw); the clamp used for every adjusted p-value.
double bonferroni_adjust(double p_raw, std::int64_t m);

// Conciseness distributions keyed radiologist -> strategy, built from Ok
// outcomes only, with scores over 100% excluded.
struct GroupedScores {
    std::map<std::string, std::map<StrategyKind, std::vector<double>>> values;
};

GroupedScores grouped_scores(const std::vector<PipelineOutcome>& outcomes);

// Per-radiologist x per-strategy count table with totals row, mirroring the
// summary-table layout (counts per cell, `N (p%)` on the totals row).
struct SummaryTable {
    std::vector<std::string> radiologists;          // sorted labels
    std::vector<StrategyKind> strategies;           // fixed order, present only
    std::vector<std::int64_t> reports;              // distinct reports per radiologist
    std::vector<std::vector<std::int64_t>> counts;  // [radiologist][strategy]
    std::vector<std::int64_t> totals;               // per strategy
    std::int64_t total_reports = 0;

    // "92.9"-style 1-dp half-up percentage of totals[strategy_index] over
    // total_reports.
    std::string percent_display(std::size_t strategy_index) const;
};

// Reports processed without formatting errors (status Ok) per cell.
SummaryTable error_free_table(const std::vector<PipelineOutcome>& outcomes);

// Ok outcomes whose conciseness score exceeds 100% per cell.
SummaryTable over_100_table(const std::vector<PipelineOutcome>& outcomes);

std::string to_csv(const SummaryTable& table);

// Box-plot summary: quartiles by linear interpolation between closest
// ranks, whiskers by the 1.5*IQR rule, sample standard deviation.
struct BoxStats {
    std::size_t n = 0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    double mean = 0.0;
    double sd = 0.0;
};

BoxStats box_stats(std::vector<double> values);  // values must be non-empty

// p-quantile of sorted values by linear interpolation between closest ranks.
double quantile_linear(const std::vector<double>& sorted_values, double p);

// Plot-data bundles (schemas in docs/formats.md). Empty cells appear with
// an explicit null marker.
nlohmann::ordered_json fig2_bundle(const std::vector<PipelineOutcome>& outcomes);
nlohmann::ordered_json fig3_bundle(const std::vector<PipelineOutcome>& outcomes);
nlohmann::ordered_json fig4_bundle(const std::vector<PipelineOutcome>& outcomes);

// "92.9"-style percentage string: 1-dp, half-up, integer arithmetic.
std::string percent_1dp(std::int64_t count, std::int64_t total);

}  // namespace radstruct::stats

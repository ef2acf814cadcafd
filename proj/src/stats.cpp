#include "radstruct/stats.hpp"

#include "radstruct/prob.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace radstruct::stats {

namespace {

struct RankedGroups {
    std::vector<std::vector<double>> ranks;  // average ranks, per group
    std::vector<double> rank_sums;
    std::size_t total = 0;
    double tie_sum = 0.0;  // sum of t^3 - t over tie groups
};

RankedGroups rank_groups(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2)
        throw std::invalid_argument("rank test: needs at least two groups");
    for (const auto& group : groups)
        if (group.empty()) throw std::invalid_argument("rank test: group is empty");

    std::vector<std::pair<double, std::size_t>> pooled;  // value, group
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (double v : groups[g]) pooled.emplace_back(v, g);
    std::stable_sort(pooled.begin(), pooled.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    RankedGroups ranked;
    ranked.total = pooled.size();
    ranked.ranks.resize(groups.size());
    ranked.rank_sums.assign(groups.size(), 0.0);

    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
        const double t = static_cast<double>(j - i);
        if (t > 1.0) ranked.tie_sum += t * t * t - t;
        for (std::size_t k = i; k < j; ++k) {
            ranked.ranks[pooled[k].second].push_back(avg_rank);
            ranked.rank_sums[pooled[k].second] += avg_rank;
        }
        i = j;
    }
    return ranked;
}

}  // namespace

KWResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    RankedGroups ranked = rank_groups(groups);
    const double n = static_cast<double>(ranked.total);
    const int df = static_cast<int>(groups.size()) - 1;

    double h = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g)
        h += ranked.rank_sums[g] * ranked.rank_sums[g] / static_cast<double>(groups[g].size());
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

    const double tie_correction = 1.0 - ranked.tie_sum / (n * n * n - n);
    if (tie_correction <= 0.0) return KWResult{0.0, df, 1.0};  // all values tied
    h /= tie_correction;
    if (h < 0.0 && h > -1e-12) h = 0.0;  // clamp rounding noise at the boundary

    return KWResult{h, df, prob::chi_square_sf(h, df)};
}

std::vector<DunnResult> dunn_pairwise(const std::vector<std::vector<double>>& groups,
                                      std::int64_t bonferroni_m) {
    if (bonferroni_m < 1) throw std::invalid_argument("dunn_pairwise: m must be >= 1");
    RankedGroups ranked = rank_groups(groups);
    const double n = static_cast<double>(ranked.total);
    const double tie_term = ranked.tie_sum / (12.0 * (n - 1.0));
    const double base_var = n * (n + 1.0) / 12.0 - tie_term;

    std::vector<DunnResult> results;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            const double ni = static_cast<double>(groups[i].size());
            const double nj = static_cast<double>(groups[j].size());
            const double mean_i = ranked.rank_sums[i] / ni;
            const double mean_j = ranked.rank_sums[j] / nj;
            const double denom = std::sqrt(base_var * (1.0 / ni + 1.0 / nj));
            DunnResult result;
            result.group_a = i;
            result.group_b = j;
            result.z = denom > 0.0 ? (mean_i - mean_j) / denom : 0.0;
            result.p_raw = prob::normal_two_sided_p(result.z);
            result.p_adj = bonferroni_adjust(result.p_raw, bonferroni_m);
            results.push_back(result);
        }
    }
    return results;
}

std::int64_t bonferroni_factor(int n_strategies, int n_radiologists) {
    if (n_strategies < 2) throw std::invalid_argument("bonferroni_factor: needs >= 2 strategies");
    if (n_radiologists < 1)
        throw std::invalid_argument("bonferroni_factor: needs >= 1 radiologist");
    const std::int64_t s = n_strategies;
    return s * (s - 1) / 2 * n_radiologists;
}

double bonferroni_adjust(double p_raw, std::int64_t m) {
    return std::min(1.0, static_cast<double>(m) * p_raw);
}

GroupedScores grouped_scores(const std::vector<PipelineOutcome>& outcomes) {
    GroupedScores grouped;
    for (const PipelineOutcome& outcome : outcomes) {
        if (outcome.status != OutcomeStatus::Ok) continue;
        if (outcome.over_100) continue;  // scores over 100% are excluded
        grouped.values[outcome.radiologist][outcome.strategy].push_back(outcome.score->value());
    }
    return grouped;
}

// ---------------------------------------------------------------------------
// Summary tables
// ---------------------------------------------------------------------------

std::string percent_1dp(std::int64_t count, std::int64_t total) {
    if (total <= 0) return "0.0";
    std::int64_t scaled = 1000 * count;
    std::int64_t q = scaled / total;
    if (2 * (scaled % total) >= total) ++q;
    std::ostringstream out;
    out << q / 10 << '.' << q % 10;
    return out.str();
}

std::string SummaryTable::percent_display(std::size_t strategy_index) const {
    return percent_1dp(totals.at(strategy_index), total_reports);
}

namespace {

SummaryTable count_table(const std::vector<PipelineOutcome>& outcomes,
                         bool (*counts_cell)(const PipelineOutcome&)) {
    SummaryTable table;

    std::set<StrategyKind> present;
    std::map<std::string, std::set<std::string>> reports_by_radiologist;
    for (const PipelineOutcome& outcome : outcomes) {
        present.insert(outcome.strategy);
        reports_by_radiologist[outcome.radiologist].insert(outcome.report_id);
    }
    for (StrategyKind kind : kAllStrategyKinds)
        if (present.count(kind)) table.strategies.push_back(kind);
    for (const auto& [radiologist, ids] : reports_by_radiologist) {
        table.radiologists.push_back(radiologist);
        table.reports.push_back(static_cast<std::int64_t>(ids.size()));
        table.total_reports += static_cast<std::int64_t>(ids.size());
    }

    table.counts.assign(table.radiologists.size(),
                        std::vector<std::int64_t>(table.strategies.size(), 0));
    table.totals.assign(table.strategies.size(), 0);

    auto radiologist_index = [&](const std::string& label) {
        return static_cast<std::size_t>(
            std::lower_bound(table.radiologists.begin(), table.radiologists.end(), label) -
            table.radiologists.begin());
    };
    auto strategy_index = [&](StrategyKind kind) {
        for (std::size_t i = 0; i < table.strategies.size(); ++i)
            if (table.strategies[i] == kind) return i;
        return table.strategies.size();
    };

    for (const PipelineOutcome& outcome : outcomes) {
        if (!counts_cell(outcome)) continue;
        const std::size_t r = radiologist_index(outcome.radiologist);
        const std::size_t s = strategy_index(outcome.strategy);
        ++table.counts[r][s];
        ++table.totals[s];
    }
    return table;
}

}  // namespace

SummaryTable error_free_table(const std::vector<PipelineOutcome>& outcomes) {
    return count_table(outcomes, [](const PipelineOutcome& outcome) {
        return outcome.status == OutcomeStatus::Ok;
    });
}

SummaryTable over_100_table(const std::vector<PipelineOutcome>& outcomes) {
    return count_table(outcomes, [](const PipelineOutcome& outcome) {
        return outcome.status == OutcomeStatus::Ok && outcome.over_100;
    });
}

std::string to_csv(const SummaryTable& table) {
    std::ostringstream out;
    out << "radiologist,reports";
    for (StrategyKind kind : table.strategies) out << ',' << strategy_id(kind);
    out << '\n';
    for (std::size_t r = 0; r < table.radiologists.size(); ++r) {
        out << table.radiologists[r] << ',' << table.reports[r];
        for (std::size_t s = 0; s < table.strategies.size(); ++s) out << ',' << table.counts[r][s];
        out << '\n';
    }
    out << "Total," << table.total_reports;
    for (std::size_t s = 0; s < table.strategies.size(); ++s)
        out << ',' << table.totals[s] << " (" << table.percent_display(s) << "%)";
    out << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Figure bundles
// ---------------------------------------------------------------------------

double quantile_linear(const std::vector<double>& sorted_values, double p) {
    if (sorted_values.empty())
        throw std::invalid_argument("quantile_linear: values are empty");
    if (p <= 0.0) return sorted_values.front();
    if (p >= 1.0) return sorted_values.back();
    const double h = p * static_cast<double>(sorted_values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted_values.size()) return sorted_values.back();
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

BoxStats box_stats(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("box_stats: values are empty");
    std::sort(values.begin(), values.end());

    BoxStats stats;
    stats.n = values.size();
    stats.q1 = quantile_linear(values, 0.25);
    stats.median = quantile_linear(values, 0.5);
    stats.q3 = quantile_linear(values, 0.75);

    const double iqr = stats.q3 - stats.q1;
    const double low_fence = stats.q1 - 1.5 * iqr;
    const double high_fence = stats.q3 + 1.5 * iqr;
    stats.whisker_low = values.back();
    stats.whisker_high = values.front();
    for (double v : values) {
        if (v >= low_fence && v < stats.whisker_low) stats.whisker_low = v;
        if (v <= high_fence && v > stats.whisker_high) stats.whisker_high = v;
    }

    double sum = 0.0;
    for (double v : values) sum += v;
    stats.mean = sum / static_cast<double>(stats.n);
    double ss = 0.0;
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.sd = stats.n > 1 ? std::sqrt(ss / static_cast<double>(stats.n - 1)) : 0.0;
    return stats;
}

namespace {

nlohmann::ordered_json box_json(const BoxStats& stats) {
    nlohmann::ordered_json j;
    j["n"] = stats.n;
    j["median"] = stats.median;
    j["q1"] = stats.q1;
    j["q3"] = stats.q3;
    j["whisker_low"] = stats.whisker_low;
    j["whisker_high"] = stats.whisker_high;
    j["mean"] = stats.mean;
    j["sd"] = stats.sd;
    return j;
}

std::vector<StrategyKind> strategies_present(const std::vector<PipelineOutcome>& outcomes) {
    std::set<StrategyKind> present;
    for (const PipelineOutcome& outcome : outcomes) present.insert(outcome.strategy);
    std::vector<StrategyKind> ordered;
    for (StrategyKind kind : kAllStrategyKinds)
        if (present.count(kind)) ordered.push_back(kind);
    return ordered;
}

std::vector<std::string> radiologists_present(const std::vector<PipelineOutcome>& outcomes) {
    std::set<std::string> present;
    for (const PipelineOutcome& outcome : outcomes) present.insert(outcome.radiologist);
    return {present.begin(), present.end()};
}

double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

double sample_sd(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace

nlohmann::ordered_json fig2_bundle(const std::vector<PipelineOutcome>& outcomes) {
    nlohmann::ordered_json bundle;
    for (StrategyKind kind : strategies_present(outcomes)) {
        nlohmann::ordered_json per_radiologist;
        for (const std::string& radiologist : radiologists_present(outcomes)) {
            std::vector<double> before;
            std::vector<double> after;
            nlohmann::ordered_json series = nlohmann::ordered_json::array();
            for (const PipelineOutcome& outcome : outcomes) {
                if (outcome.strategy != kind || outcome.radiologist != radiologist) continue;
                if (outcome.status != OutcomeStatus::Ok) continue;
                before.push_back(static_cast<double>(outcome.words_in));
                after.push_back(static_cast<double>(outcome.words_out));
                series.push_back({{"report_id", outcome.report_id},
                                  {"before", outcome.words_in},
                                  {"after", outcome.words_out}});
            }
            if (before.empty()) {
                per_radiologist[radiologist] = nullptr;
                continue;
            }
            const double before_mean = mean_of(before);
            const double after_mean = mean_of(after);
            nlohmann::ordered_json cell;
            cell["n"] = before.size();
            cell["before_mean"] = before_mean;
            cell["before_sd"] = sample_sd(before, before_mean);
            cell["after_mean"] = after_mean;
            cell["after_sd"] = sample_sd(after, after_mean);
            cell["series"] = std::move(series);
            per_radiologist[radiologist] = std::move(cell);
        }
        bundle[strategy_id(kind)] = std::move(per_radiologist);
    }
    return bundle;
}

nlohmann::ordered_json fig3_bundle(const std::vector<PipelineOutcome>& outcomes) {
    const GroupedScores grouped = grouped_scores(outcomes);
    nlohmann::ordered_json bundle;
    for (StrategyKind kind : strategies_present(outcomes)) {
        nlohmann::ordered_json per_radiologist;
        for (const std::string& radiologist : radiologists_present(outcomes)) {
            auto rad_it = grouped.values.find(radiologist);
            const std::vector<double>* values = nullptr;
            if (rad_it != grouped.values.end()) {
                auto strat_it = rad_it->second.find(kind);
                if (strat_it != rad_it->second.end() && !strat_it->second.empty())
                    values = &strat_it->second;
            }
            if (!values) {
                per_radiologist[radiologist] = nullptr;
                continue;
            }
            per_radiologist[radiologist] = box_json(box_stats(*values));
        }
        bundle[strategy_id(kind)] = std::move(per_radiologist);
    }
    return bundle;
}

nlohmann::ordered_json fig4_bundle(const std::vector<PipelineOutcome>& outcomes) {
    const GroupedScores grouped = grouped_scores(outcomes);

    // Bonferroni factor from the data's actual strategy/radiologist counts.
    std::set<StrategyKind> strategy_set;
    for (const auto& [radiologist, by_strategy] : grouped.values)
        for (const auto& [kind, values] : by_strategy) strategy_set.insert(kind);
    std::int64_t m = 1;
    if (strategy_set.size() >= 2 && !grouped.values.empty())
        m = bonferroni_factor(static_cast<int>(strategy_set.size()),
                              static_cast<int>(grouped.values.size()));

    nlohmann::ordered_json bundle;
    bundle["bonferroni_m"] = m;
    nlohmann::ordered_json per_radiologist;
    for (const std::string& radiologist : radiologists_present(outcomes)) {
        nlohmann::ordered_json cell;
        nlohmann::ordered_json boxes;
        std::vector<std::vector<double>> groups;
        std::vector<StrategyKind> group_kinds;
        auto rad_it = grouped.values.find(radiologist);
        for (StrategyKind kind : strategies_present(outcomes)) {
            const std::vector<double>* values = nullptr;
            if (rad_it != grouped.values.end()) {
                auto strat_it = rad_it->second.find(kind);
                if (strat_it != rad_it->second.end() && !strat_it->second.empty())
                    values = &strat_it->second;
            }
            if (!values) {
                boxes[strategy_id(kind)] = nullptr;
                continue;
            }
            boxes[strategy_id(kind)] = box_json(box_stats(*values));
            groups.push_back(*values);
            group_kinds.push_back(kind);
        }
        cell["strategies"] = std::move(boxes);

        if (groups.size() >= 2) {
            const KWResult kw = kruskal_wallis(groups);
            cell["kruskal"] = {{"H", kw.H}, {"df", kw.df}, {"p", kw.p}};
            nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
            for (const DunnResult& dunn : dunn_pairwise(groups, m)) {
                if (dunn.p_adj >= 0.05) continue;
                pairs.push_back({{"a", strategy_id(group_kinds[dunn.group_a])},
                                 {"b", strategy_id(group_kinds[dunn.group_b])},
                                 {"z", dunn.z},
                                 {"p_raw", dunn.p_raw},
                                 {"p_adj", dunn.p_adj}});
            }
            cell["significant_pairs"] = std::move(pairs);
        } else {
            cell["kruskal"] = nullptr;
            cell["significant_pairs"] = nlohmann::ordered_json::array();
        }
        per_radiologist[radiologist] = std::move(cell);
    }
    bundle["radiologists"] = std::move(per_radiologist);
    return bundle;
}

}  // namespace radstruct::stats

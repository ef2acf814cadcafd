#include "radstruct/outcome.hpp"

#include "radstruct/errors.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace radstruct {

const char* strategy_id(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::S: return "s";
        case StrategyKind::SThenC: return "s_then_c";
        case StrategyKind::CThenS: return "c_then_s";
        case StrategyKind::SPlusC: return "s_plus_c";
        case StrategyKind::SPlusCFI: return "s_plus_c_fi";
    }
    return "?";
}

const char* strategy_display(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::S: return "[S]";
        case StrategyKind::SThenC: return "[S >> C]";
        case StrategyKind::CThenS: return "[C >> S]";
        case StrategyKind::SPlusC: return "[S + C]";
        case StrategyKind::SPlusCFI: return "[S + C (F, I)]";
    }
    return "?";
}

std::optional<StrategyKind> strategy_from_id(std::string_view id) {
    for (StrategyKind kind : kAllStrategyKinds)
        if (id == strategy_id(kind)) return kind;
    return std::nullopt;
}

const char* outcome_status_id(OutcomeStatus status) {
    switch (status) {
        case OutcomeStatus::Ok: return "ok";
        case OutcomeStatus::FormatError: return "format_error";
        case OutcomeStatus::TransportError: return "transport_error";
    }
    return "?";
}

std::optional<OutcomeStatus> outcome_status_from_id(std::string_view id) {
    for (OutcomeStatus status :
         {OutcomeStatus::Ok, OutcomeStatus::FormatError, OutcomeStatus::TransportError})
        if (id == outcome_status_id(status)) return status;
    return std::nullopt;
}

int PipelineOutcome::attempts() const {
    int worst = 0;
    for (int a : stage_attempts) worst = std::max(worst, a);
    return worst;
}

namespace {

nlohmann::ordered_json outcome_to_json(const PipelineOutcome& outcome) {
    nlohmann::ordered_json j;
    j["report_id"] = outcome.report_id;
    j["radiologist"] = outcome.radiologist;
    j["strategy"] = strategy_id(outcome.strategy);
    j["status"] = outcome_status_id(outcome.status);
    if (outcome.status == OutcomeStatus::FormatError)
        j["error_kind"] = error_kind_name(*outcome.error);
    if (outcome.status == OutcomeStatus::TransportError)
        j["transport"] = outcome.transport_message;
    j["attempts"] = outcome.attempts();
    j["stage_attempts"] = outcome.stage_attempts;
    j["raw_outputs"] = outcome.raw_outputs;
    j["words_in"] = outcome.words_in;
    j["words_in_findings"] = outcome.words_in_findings;
    j["words_in_impressions"] = outcome.words_in_impressions;
    if (outcome.status == OutcomeStatus::Ok) {
        j["structured_text"] = outcome.structured_text;
        j["words_out"] = outcome.words_out;
        j["words_out_sections"] = outcome.words_out_sections;
        j["words_out_impressions"] = outcome.words_out_impressions;
        j["conciseness_pct"] = outcome.score->display();
        j["over_100"] = outcome.over_100;
    }
    return j;
}

PipelineOutcome outcome_from_json(const nlohmann::json& j, const std::string& where) {
    PipelineOutcome outcome;
    try {
        outcome.report_id = j.at("report_id").get<std::string>();
        outcome.radiologist = j.at("radiologist").get<std::string>();
        auto strategy = strategy_from_id(j.at("strategy").get<std::string>());
        if (!strategy) throw DataError(where + ": unknown strategy id");
        outcome.strategy = *strategy;
        auto status = outcome_status_from_id(j.at("status").get<std::string>());
        if (!status) throw DataError(where + ": unknown status");
        outcome.status = *status;
        if (outcome.status == OutcomeStatus::FormatError) {
            std::string kind = j.at("error_kind").get<std::string>();
            if (kind == error_kind_name(ErrorKind::FailureToStructure))
                outcome.error = ErrorKind::FailureToStructure;
            else if (kind == error_kind_name(ErrorKind::ImpressionListError))
                outcome.error = ErrorKind::ImpressionListError;
            else
                throw DataError(where + ": unknown error kind '" + kind + "'");
        }
        if (outcome.status == OutcomeStatus::TransportError)
            outcome.transport_message = j.at("transport").get<std::string>();
        outcome.stage_attempts = j.at("stage_attempts").get<std::vector<int>>();
        outcome.raw_outputs = j.at("raw_outputs").get<std::vector<std::string>>();
        outcome.words_in = j.at("words_in").get<std::int64_t>();
        outcome.words_in_findings = j.at("words_in_findings").get<std::int64_t>();
        outcome.words_in_impressions = j.at("words_in_impressions").get<std::int64_t>();
        if (outcome.status == OutcomeStatus::Ok) {
            outcome.structured_text = j.at("structured_text").get<std::string>();
            outcome.words_out = j.at("words_out").get<std::int64_t>();
            outcome.words_out_sections = j.at("words_out_sections").get<std::int64_t>();
            outcome.words_out_impressions = j.at("words_out_impressions").get<std::int64_t>();
            outcome.score = conciseness(outcome.words_out, outcome.words_in);
            outcome.over_100 = j.at("over_100").get<bool>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(where + ": malformed outcome record: " + e.what());
    }
    return outcome;
}

}  // namespace

void persist_outcomes(const std::vector<PipelineOutcome>& outcomes, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (const PipelineOutcome& outcome : outcomes) out << outcome_to_json(outcome).dump() << '\n';
    out.flush();
    if (!out) throw IoError("write failure on '" + path + "'");
}

std::vector<PipelineOutcome> load_outcomes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<PipelineOutcome> outcomes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        std::string where = path + ":" + std::to_string(line_no);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(where + ": malformed JSON: " + e.what());
        }
        outcomes.push_back(outcome_from_json(j, where));
    }
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return outcomes;
}

}  // namespace radstruct

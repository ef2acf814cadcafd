#include "radstruct/metrics.hpp"

#include "text_util.hpp"

#include <cstdio>
#include <stdexcept>

namespace radstruct {

using detail::split_lines;
using detail::split_ws_tokens;
using detail::trim;

namespace {

bool is_fence_token(std::string_view token) {
    if (token.size() < 2) return false;
    for (char c : token)
        if (c != '=') return false;
    return true;
}

bool is_bullet_marker(std::string_view token) {
    if (token == "-" || token == "*") return true;
    if (token.size() < 2 || token.back() != '.') return false;
    for (std::size_t i = 0; i + 1 < token.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(token[i]))) return false;
    return true;
}

}  // namespace

std::int64_t count_words(std::string_view text) {
    std::int64_t count = 0;
    for (std::string_view line : split_lines(text)) {
        const auto tokens = split_ws_tokens(line);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (is_fence_token(tokens[i])) continue;
            if (i == 0 && is_bullet_marker(tokens[i])) continue;
            ++count;
        }
    }
    return count;
}

double ConcisenessScore::value() const {
    return 100.0 * static_cast<double>(out_words) / static_cast<double>(in_words);
}

std::string ConcisenessScore::display() const {
    // Half-up rounding to 2 decimals in integer arithmetic: the stored
    // ratio stays exact, only this projection rounds.
    const std::int64_t scaled = out_words * 10000;
    std::int64_t q = scaled / in_words;
    const std::int64_t r = scaled % in_words;
    if (2 * r >= in_words) ++q;
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%lld.%02lld", static_cast<long long>(q / 100),
                  static_cast<long long>(q % 100));
    return buffer;
}

ConcisenessScore conciseness(std::int64_t out_words, std::int64_t in_words) {
    if (in_words <= 0)
        throw std::invalid_argument("conciseness: input word count must be positive");
    if (out_words < 0)
        throw std::invalid_argument("conciseness: output word count must be non-negative");
    return ConcisenessScore{out_words, in_words};
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::FailureToStructure: return "failure_to_structure";
        case ErrorKind::ImpressionListError: return "impression_list_error";
    }
    return "?";
}

ErrorKind classify_error(const TemplateSpec& tpl, std::string_view raw_output,
                         const ParseFailure& failure, int attempts, ParseMode mode) {
    (void)failure;
    if (attempts < 2)
        throw std::logic_error("classify_error: called before both attempts were used");

    bool sections_ok = true;
    if (mode != ParseMode::ImpressionsOnly)
        sections_ok = parse_structured(tpl, raw_output, ParseMode::SectionsOnly).ok();

    // Letter-per-line impressions: at least half of the non-empty lines in
    // the impressions region are a single alphanumeric character.
    std::size_t region_lines = 0;
    std::size_t single_char_lines = 0;
    bool in_impressions = false;
    for (std::string_view line : split_lines(raw_output)) {
        if (!in_impressions) {
            if (is_impressions_line(line)) in_impressions = true;
            continue;
        }
        std::string_view t = trim(line);
        if (t.empty()) continue;
        ++region_lines;
        if (t.size() == 1 && std::isalnum(static_cast<unsigned char>(t[0]))) ++single_char_lines;
    }

    if (sections_ok && region_lines > 0 && 2 * single_char_lines >= region_lines)
        return ErrorKind::ImpressionListError;
    return ErrorKind::FailureToStructure;
}

}  // namespace radstruct

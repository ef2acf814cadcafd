#pragma once

#include "radstruct/report_template.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace radstruct {

// Number of maximal non-whitespace runs after stripping template header
// fences (`==` runs) and leading bullet markers (`-`, `*`, `1.`-style).
// Sentinel lines `Unremarkable` / `None` count as one word. Hyphenated
// terms count as one word.
std::int64_t count_words(std::string_view text);

// Exact rational 100 * out_words / in_words. Stored unrounded; rounding
// happens only at display, to two decimals.
struct ConcisenessScore {
    std::int64_t out_words = 0;
    std::int64_t in_words = 1;

    double value() const;         // 100.0 * out / in
    std::string display() const;  // 2-dp, half-up, computed in integer math
    bool over_100() const { return out_words > in_words; }

    bool operator==(const ConcisenessScore&) const = default;
};

// Throws std::invalid_argument when in_words == 0 or either count is
// negative.
ConcisenessScore conciseness(std::int64_t out_words, std::int64_t in_words);

// The two formatting-error kinds observed in model outputs. Exactly one is
// assigned per failed outcome; ImpressionListError takes precedence when
// both patterns co-occur.
enum class ErrorKind { FailureToStructure, ImpressionListError };

const char* error_kind_name(ErrorKind kind);

// Classifies a final output that still failed to parse after the fix
// attempt. ImpressionListError iff the expected section half parsed but at
// least half of the non-empty impression lines are a single alphanumeric
// character; FailureToStructure otherwise. Throws std::logic_error when
// called with attempts < 2 (the caller must exhaust both attempts first).
ErrorKind classify_error(const TemplateSpec& tpl, std::string_view raw_output,
                         const ParseFailure& failure, int attempts,
                         ParseMode mode = ParseMode::FullReport);

}  // namespace radstruct

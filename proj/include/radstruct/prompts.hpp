#pragma once

#include "radstruct/report_template.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>

namespace radstruct {

// The redundant-phrase removal list carried verbatim by every
// condense-goal prompt.
const std::array<std::string_view, 8>& redundant_phrases();

// Task tags shared between the versioned prompt assets and the rule-based
// mock backend. The mock keys its behavior off these exact substrings, so
// new prompt versions must keep them (or ship a new mock).
namespace prompt_markers {
inline constexpr std::string_view kFix = "TASK: FIX FORMAT";
inline constexpr std::string_view kStructureCondense = "TASK: STRUCTURE+CONDENSE";
inline constexpr std::string_view kStructure = "TASK: STRUCTURE\n";
inline constexpr std::string_view kCondense = "TASK: CONDENSE";
inline constexpr std::string_view kKeepStructure = "KEEP THE EXISTING STRUCTURE.";
inline constexpr std::string_view kScopeFindings = "SCOPE: FINDINGS ONLY";
inline constexpr std::string_view kScopeImpressions = "SCOPE: IMPRESSIONS ONLY";
inline constexpr std::string_view kReportBegin = "REPORT START >>>\n";
inline constexpr std::string_view kReportEnd = "\n<<< REPORT END";
inline constexpr std::string_view kInstructionsBegin = "ORIGINAL INSTRUCTIONS START >>>\n";
inline constexpr std::string_view kInstructionsEnd = "\n<<< ORIGINAL INSTRUCTIONS END";
inline constexpr std::string_view kBadOutputBegin = "BAD OUTPUT START >>>\n";
inline constexpr std::string_view kBadOutputEnd = "\n<<< BAD OUTPUT END";
}  // namespace prompt_markers

// Versioned prompt-template assets. Asset ids follow the on-disk layout
// `prompts/<version>/<id>.txt`; placeholders are `{report}`, `{template}`,
// `{bad_output}`, and `{instructions}`.
class PromptSet {
public:
    // Built-in set, identical to the shipped `prompts/v1/` assets
    // (embedded at build time).
    static const PromptSet& v1();

    static PromptSet load_dir(const std::string& dir, std::string version);

    // Resolves `<assets_dir>/prompts/<version>/`, falling back to the
    // built-in set when the directory is absent and the version is built in.
    static PromptSet resolve(const std::string& version, const std::string& assets_dir);

    // Throws ConfigError when the asset id is unknown.
    const std::string& get(const std::string& asset_id) const;
    bool has(const std::string& asset_id) const;

    const std::string& version() const { return version_; }
    const std::map<std::string, std::string>& assets() const { return assets_; }

    bool operator==(const PromptSet&) const = default;

private:
    std::map<std::string, std::string> assets_;  // id -> template text
    std::string version_;
};

// Single pass over `text`: occurrences of `{key}` for keys present in
// `values` are replaced; substituted content is never re-scanned.
std::string substitute_placeholders(
    std::string_view text, const std::map<std::string, std::string>& values);

// Checks the structural contract of a prompt set against a template:
// every known stage asset exists, contains `{report}`, structure-goal
// assets contain `{template}`, condense-goal assets carry the full
// redundant-phrase list, and the fix asset has both fix placeholders.
// Throws ConfigError naming the first violation.
void validate_prompt_set(const PromptSet& prompts);

}  // namespace radstruct

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace radstruct {

// One section of the organ-ordered report template.
struct OrganKey {
    std::string name;
    int order_index = 0;

    bool operator==(const OrganKey&) const = default;
};

// The versioned, head-to-toe ordered section list a pipeline run is pinned
// to. Section order is fixed for the lifetime of the object.
class TemplateSpec {
public:
    // Built-in 14-section template, identical to the shipped
    // `template/v1.txt` asset (embedded at build time).
    static const TemplateSpec& v1();

    // One section name per line, order = file order.
    static TemplateSpec load_file(const std::string& path, std::string version);

    // Resolves `<assets_dir>/template/<version>.txt`, falling back to the
    // built-in list when the file is absent and the version is built in.
    static TemplateSpec resolve(const std::string& version, const std::string& assets_dir);

    static TemplateSpec from_names(const std::vector<std::string>& names, std::string version);

    const std::vector<OrganKey>& sections() const { return sections_; }
    const std::string& version() const { return version_; }
    std::size_t size() const { return sections_.size(); }

    // Case-insensitive section lookup.
    std::optional<std::size_t> index_of(std::string_view header_name) const;

    bool operator==(const TemplateSpec&) const = default;

private:
    std::vector<OrganKey> sections_;
    std::string version_;
};

// Value of one template section.
struct SectionValue {
    enum class Kind { Findings, Unremarkable, None };

    Kind kind = Kind::Unremarkable;
    std::string text;  // meaningful iff kind == Findings

    static SectionValue findings(std::string t) { return {Kind::Findings, std::move(t)}; }
    static SectionValue unremarkable() { return {Kind::Unremarkable, {}}; }
    static SectionValue none() { return {Kind::None, {}}; }

    bool operator==(const SectionValue&) const = default;
};

// A report in canonical template form: one value per template section, in
// template order, plus the impressions list.
struct StructuredReport {
    std::vector<SectionValue> sections;     // aligned with TemplateSpec order
    std::vector<std::string> impressions;   // each item >= 2 words, single line

    bool operator==(const StructuredReport&) const = default;
};

enum class ParseReason {
    UnknownHeader,
    MissingHeader,
    DuplicateHeader,
    OutOfOrderHeader,
    EmptySectionBody,
    MissingImpressions,
    EmptyImpressions,
    ImpressionItemTooShort,
};

const char* parse_reason_name(ParseReason reason);

// First offending line and why. `line` is 1-based; one past the last line
// means "missing at end of text".
struct ParseFailure {
    ParseReason reason = ParseReason::MissingHeader;
    std::size_t line = 0;
    std::string message;
};

// Which halves of the template an output is expected to carry. The
// [S + C (F, I)] strategy produces each half from a separate prompt.
enum class ParseMode { FullReport, SectionsOnly, ImpressionsOnly };

struct ParseResult {
    std::optional<StructuredReport> report;
    std::optional<ParseFailure> failure;

    bool ok() const { return report.has_value(); }
};

// Total over arbitrary text: never throws, returns a ParseFailure instead.
// In SectionsOnly mode an IMPRESSIONS block and everything after it is
// ignored; in ImpressionsOnly mode everything before the block is ignored
// and the missing half is left empty in the result.
ParseResult parse_structured(const TemplateSpec& tpl, std::string_view text,
                             ParseMode mode = ParseMode::FullReport);

// Canonical byte-exact text form:
//   == <Section Name> ==      one header line per section, template order
//   <body>                    findings text, `Unremarkable`, or `None`
//   IMPRESSIONS:
//   - <impression>            one bullet per impression
// Throws std::invalid_argument naming the violated invariant.
std::string render_structured(const TemplateSpec& tpl, const StructuredReport& report);

// The two halves of render_structured, used by the per-section strategy and
// for per-half word counts. Same invariant checks as the full render.
std::string render_sections(const TemplateSpec& tpl, const StructuredReport& report);
std::string render_impressions(const StructuredReport& report);

// Prompt-embeddable skeleton: every header line in order with value
// placeholders, then the IMPRESSIONS block shape.
std::string template_skeleton(const TemplateSpec& tpl);

// True if the trimmed line is a `== ... ==` header fence.
bool is_header_line(std::string_view line);

// True if the trimmed line opens the impressions block.
bool is_impressions_line(std::string_view line);

}  // namespace radstruct

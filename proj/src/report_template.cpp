#include "radstruct/report_template.hpp"

#include "radstruct/errors.hpp"
#include "text_util.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "radstruct_assets.inc"

namespace radstruct {

using detail::iequals;
using detail::split_lines;
using detail::split_ws_tokens;
using detail::trim;

namespace {

constexpr std::string_view kImpressionsHeader = "IMPRESSIONS:";
constexpr std::string_view kUnremarkable = "Unremarkable";
constexpr std::string_view kNone = "None";

std::size_t simple_word_count(std::string_view s) {
    return split_ws_tokens(s).size();
}

// Strips a `-`, `*`, or `1.`-style list marker. Returns the item text.
std::string_view strip_list_marker(std::string_view line) {
    std::string_view t = trim(line);
    if (t.size() >= 2 && (t[0] == '-' || t[0] == '*') && detail::is_space(t[1]))
        return trim(t.substr(2));
    if (t.size() == 1 && (t[0] == '-' || t[0] == '*')) return {};
    std::size_t digits = 0;
    while (digits < t.size() && std::isdigit(static_cast<unsigned char>(t[digits]))) ++digits;
    if (digits > 0 && digits < t.size() && t[digits] == '.') {
        std::string_view rest = t.substr(digits + 1);
        if (rest.empty() || detail::is_space(rest.front())) return trim(rest);
    }
    return t;
}

}  // namespace

bool is_header_line(std::string_view line) {
    std::string_view t = trim(line);
    return t.size() >= 5 && t.starts_with("==") && t.ends_with("==") &&
           !trim(t.substr(2, t.size() - 4)).empty();
}

bool is_impressions_line(std::string_view line) {
    return iequals(trim(line), kImpressionsHeader);
}

// ---------------------------------------------------------------------------
// TemplateSpec
// ---------------------------------------------------------------------------

const TemplateSpec& TemplateSpec::v1() {
    static const TemplateSpec spec = [] {
        std::vector<std::string> names;
        for (std::string_view line : split_lines(assets::kTemplateV1)) {
            std::string_view t = trim(line);
            if (!t.empty()) names.emplace_back(t);
        }
        return from_names(names, "v1");
    }();
    return spec;
}

TemplateSpec TemplateSpec::from_names(const std::vector<std::string>& names, std::string version) {
    if (names.empty()) throw ConfigError("template '" + version + "' has no sections");
    TemplateSpec spec;
    spec.version_ = std::move(version);
    int index = 0;
    for (const std::string& name : names) {
        std::string_view t = trim(name);
        if (t.empty()) throw ConfigError("template '" + spec.version_ + "' has a blank section name");
        for (const OrganKey& key : spec.sections_) {
            if (iequals(key.name, t))
                throw ConfigError("template '" + spec.version_ + "' repeats section '" +
                                  std::string(t) + "'");
        }
        spec.sections_.push_back(OrganKey{std::string(t), index++});
    }
    return spec;
}

TemplateSpec TemplateSpec::load_file(const std::string& path, std::string version) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open template file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();
    std::vector<std::string> names;
    for (std::string_view line : split_lines(content)) {
        std::string_view t = trim(line);
        if (!t.empty()) names.emplace_back(t);
    }
    return from_names(names, std::move(version));
}

TemplateSpec TemplateSpec::resolve(const std::string& version, const std::string& assets_dir) {
    std::filesystem::path path =
        std::filesystem::path(assets_dir) / "template" / (version + ".txt");
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) return load_file(path.string(), version);
    if (version == "v1") return v1();
    throw ConfigError("unknown template version '" + version + "' (no file at " + path.string() +
                      ")");
}

std::optional<std::size_t> TemplateSpec::index_of(std::string_view header_name) const {
    std::string_view t = trim(header_name);
    for (std::size_t i = 0; i < sections_.size(); ++i) {
        if (iequals(sections_[i].name, t)) return i;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

const char* parse_reason_name(ParseReason reason) {
    switch (reason) {
        case ParseReason::UnknownHeader: return "unknown-header";
        case ParseReason::MissingHeader: return "missing-header";
        case ParseReason::DuplicateHeader: return "duplicate-header";
        case ParseReason::OutOfOrderHeader: return "out-of-order-header";
        case ParseReason::EmptySectionBody: return "empty-section-body";
        case ParseReason::MissingImpressions: return "missing-impressions";
        case ParseReason::EmptyImpressions: return "empty-impressions";
        case ParseReason::ImpressionItemTooShort: return "impression-item-too-short";
    }
    return "?";
}

namespace {

struct HeaderHit {
    std::size_t line;   // 1-based
    std::string name;   // inner text, trimmed
};

ParseResult fail(ParseReason reason, std::size_t line, std::string message) {
    ParseResult result;
    result.failure = ParseFailure{reason, line, std::move(message)};
    return result;
}

std::string join_body(const std::vector<std::string_view>& lines, std::size_t begin,
                      std::size_t end) {
    // Drop blank edge lines; keep interior lines verbatim.
    while (begin < end && trim(lines[begin]).empty()) ++begin;
    while (end > begin && trim(lines[end - 1]).empty()) --end;
    std::string body;
    for (std::size_t i = begin; i < end; ++i) {
        if (!body.empty()) body.push_back('\n');
        body.append(lines[i]);
    }
    return body;
}

}  // namespace

ParseResult parse_structured(const TemplateSpec& tpl, std::string_view text, ParseMode mode) {
    const std::vector<std::string_view> lines = split_lines(text);
    const std::size_t eof_line = lines.size() + 1;

    // Locate the impressions block.
    std::size_t impressions_at = lines.size();  // index of the IMPRESSIONS: line
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (is_impressions_line(lines[i])) {
            impressions_at = i;
            break;
        }
    }

    StructuredReport report;

    if (mode != ParseMode::ImpressionsOnly) {
        // Header scan over the section region.
        std::vector<HeaderHit> headers;
        for (std::size_t i = 0; i < impressions_at; ++i) {
            if (is_header_line(lines[i])) {
                std::string_view t = trim(lines[i]);
                headers.push_back(HeaderHit{i + 1, std::string(trim(t.substr(2, t.size() - 4)))});
            }
        }

        std::vector<std::size_t> seen_line(tpl.size(), 0);
        std::vector<std::size_t> canon(headers.size());
        for (std::size_t h = 0; h < headers.size(); ++h) {
            auto idx = tpl.index_of(headers[h].name);
            if (!idx)
                return fail(ParseReason::UnknownHeader, headers[h].line,
                            "unknown section header '" + headers[h].name + "'");
            canon[h] = *idx;
            if (seen_line[*idx] != 0)
                return fail(ParseReason::DuplicateHeader, headers[h].line,
                            "section '" + tpl.sections()[*idx].name + "' appears again (first at line " +
                                std::to_string(seen_line[*idx]) + ")");
            seen_line[*idx] = headers[h].line;
        }
        for (std::size_t i = 0; i < tpl.size(); ++i) {
            if (seen_line[i] == 0) {
                // Offending line: where the walk first diverged, else the end
                // of the section region.
                std::size_t at = impressions_at < lines.size() ? impressions_at + 1 : eof_line;
                for (std::size_t h = 0; h < headers.size(); ++h) {
                    if (canon[h] > i) {
                        at = headers[h].line;
                        break;
                    }
                }
                return fail(ParseReason::MissingHeader, at,
                            "missing section header '" + tpl.sections()[i].name + "'");
            }
        }
        for (std::size_t h = 1; h < headers.size(); ++h) {
            if (canon[h] < canon[h - 1])
                return fail(ParseReason::OutOfOrderHeader, headers[h].line,
                            "section '" + headers[h].name + "' out of template order");
        }
        if (mode == ParseMode::FullReport) {
            // Header fences inside the impressions region break the shape.
            for (std::size_t i = impressions_at; i < lines.size(); ++i) {
                if (is_header_line(lines[i]))
                    return fail(ParseReason::OutOfOrderHeader, i + 1,
                                "section header after the IMPRESSIONS block");
            }
        }

        // Section bodies.
        report.sections.resize(tpl.size());
        for (std::size_t h = 0; h < headers.size(); ++h) {
            std::size_t body_begin = headers[h].line;  // line after the header (0-based index)
            std::size_t body_end = (h + 1 < headers.size()) ? headers[h + 1].line - 1 : impressions_at;
            std::string body = join_body(lines, body_begin, body_end);
            if (body.empty())
                return fail(ParseReason::EmptySectionBody, headers[h].line,
                            "section '" + headers[h].name + "' has no value");
            std::string_view t = trim(body);
            if (iequals(t, kUnremarkable))
                report.sections[canon[h]] = SectionValue::unremarkable();
            else if (iequals(t, kNone))
                report.sections[canon[h]] = SectionValue::none();
            else
                report.sections[canon[h]] = SectionValue::findings(std::move(body));
        }
    }

    if (mode != ParseMode::SectionsOnly) {
        if (impressions_at == lines.size())
            return fail(ParseReason::MissingImpressions, eof_line, "no IMPRESSIONS block");
        for (std::size_t i = impressions_at + 1; i < lines.size(); ++i) {
            std::string_view t = trim(lines[i]);
            if (t.empty()) continue;
            if (is_header_line(t))
                return fail(ParseReason::OutOfOrderHeader, i + 1,
                            "section header after the IMPRESSIONS block");
            std::string_view item = strip_list_marker(t);
            if (simple_word_count(item) < 2)
                return fail(ParseReason::ImpressionItemTooShort, i + 1,
                            "impression item '" + std::string(item) + "' has fewer than two words");
            report.impressions.emplace_back(item);
        }
        if (report.impressions.empty())
            return fail(ParseReason::EmptyImpressions, impressions_at + 1,
                        "IMPRESSIONS block has no items");
    }

    ParseResult result;
    result.report = std::move(report);
    return result;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

void check_body_text(const std::string& text, const std::string& where) {
    if (text.empty()) throw std::invalid_argument("render: " + where + " text is empty");
    if (detail::is_space(text.front()) || detail::is_space(text.back()))
        throw std::invalid_argument("render: " + where + " text has leading/trailing whitespace");
    for (std::string_view line : split_lines(text)) {
        if (is_header_line(line))
            throw std::invalid_argument("render: " + where + " contains a section-header line");
        if (is_impressions_line(line))
            throw std::invalid_argument("render: " + where + " contains an IMPRESSIONS line");
    }
}

void check_sections(const TemplateSpec& tpl, const StructuredReport& report) {
    if (report.sections.size() != tpl.size())
        throw std::invalid_argument(
            "render: report covers " + std::to_string(report.sections.size()) +
            " sections, template has " + std::to_string(tpl.size()));
    for (std::size_t i = 0; i < report.sections.size(); ++i) {
        if (report.sections[i].kind == SectionValue::Kind::Findings)
            check_body_text(report.sections[i].text, "section '" + tpl.sections()[i].name + "'");
    }
}

void check_impressions(const StructuredReport& report) {
    if (report.impressions.empty())
        throw std::invalid_argument("render: impressions list is empty");
    for (const std::string& item : report.impressions) {
        if (item.find('\n') != std::string::npos)
            throw std::invalid_argument("render: impression item spans multiple lines");
        check_body_text(item, "impression item");
        if (simple_word_count(item) < 2)
            throw std::invalid_argument("render: impression item '" + item +
                                        "' has fewer than two words");
    }
}

}  // namespace

std::string render_sections(const TemplateSpec& tpl, const StructuredReport& report) {
    check_sections(tpl, report);
    std::string out;
    for (std::size_t i = 0; i < tpl.size(); ++i) {
        out += "== " + tpl.sections()[i].name + " ==\n";
        switch (report.sections[i].kind) {
            case SectionValue::Kind::Findings: out += report.sections[i].text; break;
            case SectionValue::Kind::Unremarkable: out += kUnremarkable; break;
            case SectionValue::Kind::None: out += kNone; break;
        }
        out += "\n";
    }
    return out;
}

std::string render_impressions(const StructuredReport& report) {
    check_impressions(report);
    std::string out{kImpressionsHeader};
    out += "\n";
    for (const std::string& item : report.impressions) out += "- " + item + "\n";
    return out;
}

std::string render_structured(const TemplateSpec& tpl, const StructuredReport& report) {
    return render_sections(tpl, report) + render_impressions(report);
}

std::string template_skeleton(const TemplateSpec& tpl) {
    std::string out;
    for (const OrganKey& key : tpl.sections()) {
        out += "== " + key.name + " ==\n";
        out += "<findings for this organ system, or Unremarkable, or None>\n";
    }
    out += kImpressionsHeader;
    out += "\n- <impression>\n- <impression>\n";
    return out;
}

}  // namespace radstruct

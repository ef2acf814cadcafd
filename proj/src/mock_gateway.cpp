#include "radstruct/mock_gateway.hpp"

#include "radstruct/prompts.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

namespace radstruct {

using detail::iequals;
using detail::is_space;
using detail::lower;
using detail::split_lines;
using detail::split_ws_tokens;
using detail::to_lower;
using detail::trim;

namespace {

namespace pm = prompt_markers;

// Sentence-to-section keyword table of the faithful backend, keyed by the
// v1 section names. First matching section in template order wins;
// keyword-free sentences are dropped.
const std::vector<std::pair<std::string_view, std::vector<std::string_view>>>& keyword_table() {
    static const std::vector<std::pair<std::string_view, std::vector<std::string_view>>> table = {
        {"Chest: Lungs/Airways",
         {"lung", "airway", "bronch", "trachea", "nodule", "atelectasis", "consolidation"}},
        {"Chest: Pleura", {"pleura", "pleural", "effusion", "pneumothorax"}},
        {"Chest: Mediastinum", {"mediastin", "hilar", "hilum"}},
        {"Chest: Heart/Vessels",
         {"heart", "cardiac", "pericardi", "aorta", "aortic", "vessel", "vascular"}},
        {"Abdomen: Hepatobiliary", {"liver", "hepatic", "biliary", "gallbladder", "bile"}},
        {"Abdomen: Spleen", {"spleen", "splen"}},
        {"Abdomen: Pancreas", {"pancrea"}},
        {"Abdomen: Adrenals", {"adrenal"}},
        {"Abdomen: Kidneys/Ureters", {"kidney", "renal", "ureter", "hydronephrosis"}},
        {"Abdomen: GI Tract",
         {"bowel", "colon", "stomach", "gastric", "esophag", "duoden", "appendix", "rectum"}},
        {"Abdomen: Peritoneum", {"periton", "ascites", "omentum", "mesenter"}},
        {"Pelvis: Bladder", {"bladder"}},
        {"Pelvis: Reproductive Organs",
         {"prostate", "uterus", "uterine", "ovary", "ovarian", "adnexa"}},
        {"Whole-body: Lymph Nodes/Bones/Soft Tissues",
         {"lymph", "node", "adenopathy", "bone", "osseous", "spine", "vertebr", "degenerative",
          "soft tissue", "osteopenia", "muscle"}},
    };
    return table;
}

std::string_view extract_block(std::string_view text, std::string_view begin,
                               std::string_view end) {
    std::size_t b = text.find(begin);
    if (b == std::string_view::npos) return {};
    b += begin.size();
    std::size_t e = text.rfind(end);
    if (e == std::string_view::npos || e < b) return text.substr(b);
    return text.substr(b, e - b);
}

bool is_findings_label(std::string_view line) { return iequals(trim(line), "FINDINGS:"); }
bool is_impressions_label(std::string_view line) { return iequals(trim(line), "IMPRESSIONS:"); }

// Sentences end at '.' followed by whitespace or end of text.
std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    std::string current;
    for (std::size_t i = 0; i < text.size(); ++i) {
        current.push_back(text[i]);
        if (text[i] == '.' && (i + 1 >= text.size() || is_space(text[i + 1]))) {
            std::string_view t = trim(current);
            if (!t.empty()) sentences.emplace_back(t);
            current.clear();
        }
    }
    if (std::string_view t = trim(current); !t.empty()) sentences.emplace_back(t);
    return sentences;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            // No space before closing punctuation.
            if (c != '.' && c != ',' && c != ';' && c != ':') out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

bool alnum_at(std::string_view s, std::size_t i) {
    return i < s.size() && std::isalnum(static_cast<unsigned char>(s[i])) != 0;
}

// Normal-findings detector of the structure-preserving condense rule.
bool is_normal_finding(std::string_view line) {
    const std::string lowered = to_lower(line);
    return lowered.find("unremarkable") != std::string::npos ||
           lowered.find("clear without") != std::string::npos ||
           lowered.find(" normal") != std::string::npos;
}

}  // namespace

std::string MockGateway::remove_redundant_phrases(std::string_view text) {
    std::string result(text);
    // One pass per phrase, case-insensitive, whole-word boundaries.
    for (std::string_view phrase : redundant_phrases()) {
        std::string haystack = to_lower(result);
        std::string needle = to_lower(phrase);
        std::vector<std::pair<std::size_t, std::size_t>> spans;
        std::size_t pos = 0;
        while ((pos = haystack.find(needle, pos)) != std::string::npos) {
            std::size_t end = pos + needle.size();
            bool left_ok = pos == 0 || !alnum_at(haystack, pos - 1);
            bool right_ok = !alnum_at(haystack, end);
            if (left_ok && right_ok) {
                spans.emplace_back(pos, end);
                pos = end;
            } else {
                ++pos;
            }
        }
        for (auto it = spans.rbegin(); it != spans.rend(); ++it)
            result.erase(it->first, it->second - it->first);
    }

    // Orphaned sentence-leading article.
    std::string lowered = to_lower(result);
    std::vector<std::pair<std::size_t, std::size_t>> article_spans;
    std::size_t i = 0;
    while (i < lowered.size()) {
        while (i < lowered.size() && is_space(lowered[i])) ++i;
        for (std::string_view article : {"a ", "an ", "the "}) {
            if (lowered.compare(i, article.size(), article) == 0 &&
                (i == 0 || !alnum_at(lowered, i - 1))) {
                article_spans.emplace_back(i, i + article.size());
                break;
            }
        }
        // Skip to the next sentence start.
        std::size_t dot = lowered.find('.', i);
        if (dot == std::string::npos) break;
        i = dot + 1;
    }
    for (auto it = article_spans.rbegin(); it != article_spans.rend(); ++it)
        result.erase(it->first, it->second - it->first);

    std::string cleaned = collapse_whitespace(result);
    return cleaned.empty() ? std::string(text) : cleaned;
}

MockGateway::MockGateway(MockBehavior behavior, TemplateSpec tpl)
    : behavior_(behavior), tpl_(std::move(tpl)) {}

const char* mock_behavior_id(MockBehavior behavior) {
    switch (behavior) {
        case MockBehavior::Faithful: return "faithful";
        case MockBehavior::Garbage: return "garbage";
        case MockBehavior::LetterImpressions: return "letter_impressions";
        case MockBehavior::FailThenFix: return "fail_then_fix";
    }
    return "?";
}

std::optional<MockBehavior> mock_behavior_from_id(std::string_view id) {
    for (MockBehavior behavior : {MockBehavior::Faithful, MockBehavior::Garbage,
                                  MockBehavior::LetterImpressions, MockBehavior::FailThenFix})
        if (id == mock_behavior_id(behavior)) return behavior;
    return std::nullopt;
}

CompletionResponse MockGateway::complete(const CompletionRequest& request) {
    validate_request(request);
    CompletionResponse response;
    response.text = respond(request.prompt);
    response.model = std::string("mock:") + mock_behavior_id(behavior_);
    return response;
}

namespace {

constexpr std::string_view kGarbageText =
    "The scan was reviewed in its entirety and the overall appearance is as previously "
    "described with several things of note throughout which are discussed in narrative "
    "form here rather than in any particular organization. Correlation is suggested. "
    "Further remarks follow the same pattern and no particular layout is used.";

struct ReportParts {
    std::string findings;
    std::string impressions;
};

// Splits labeled (or structured) text at its IMPRESSIONS line; label lines
// themselves are dropped.
ReportParts split_report(std::string_view text) {
    ReportParts parts;
    bool in_impressions = false;
    for (std::string_view line : split_lines(text)) {
        if (!in_impressions && is_impressions_label(line)) {
            in_impressions = true;
            continue;
        }
        if (is_findings_label(line)) continue;
        std::string& target = in_impressions ? parts.impressions : parts.findings;
        if (!target.empty()) target.push_back('\n');
        target.append(line);
    }
    return parts;
}

}  // namespace

std::string MockGateway::faithful(std::string_view prompt) const {
    // A fix prompt carries the original instructions; answer those.
    if (prompt.find(pm::kFix) != std::string_view::npos) {
        std::string_view inner =
            extract_block(prompt, pm::kInstructionsBegin, pm::kInstructionsEnd);
        if (!inner.empty()) return faithful(inner);
    }

    std::string_view report = extract_block(prompt, pm::kReportBegin, pm::kReportEnd);
    if (report.empty()) report = prompt;

    const bool combined = prompt.find(pm::kStructureCondense) != std::string_view::npos;
    const bool structure = combined || prompt.find(pm::kStructure) != std::string_view::npos;
    const bool findings_only = prompt.find(pm::kScopeFindings) != std::string_view::npos;
    const bool impressions_only = prompt.find(pm::kScopeImpressions) != std::string_view::npos;

    if (!structure) {
        // Condense: line-wise phrase removal that never touches structural
        // lines, so already-structured input stays parseable. When the
        // prompt demands structure preservation (the [S >> C] second stage),
        // section bodies that only report normal findings collapse to the
        // sentinel, which makes that strategy the most aggressive one.
        const bool keep_structure = prompt.find(pm::kKeepStructure) != std::string_view::npos;
        std::string out;
        for (std::string_view line : split_lines(report)) {
            std::string_view t = trim(line);
            std::string rewritten;
            if (is_header_line(t) || is_impressions_label(t) || is_findings_label(t) ||
                iequals(t, "Unremarkable") || iequals(t, "None") || t.empty()) {
                rewritten = std::string(line);
            } else if (t.starts_with("- ")) {
                std::string item = remove_redundant_phrases(t.substr(2));
                rewritten = split_ws_tokens(item).size() >= 2 ? "- " + item : std::string(line);
            } else if (keep_structure && is_normal_finding(t)) {
                rewritten = "Unremarkable";
            } else {
                rewritten = remove_redundant_phrases(t);
                if (rewritten.empty()) rewritten = std::string(line);
            }
            if (!out.empty()) out.push_back('\n');
            out += rewritten;
        }
        return out;
    }

    // Structure (optionally condensing first). Repeated identical sentences
    // are kept once.
    ReportParts parts = split_report(report);

    StructuredReport structured;
    structured.sections.assign(tpl_.size(), SectionValue::unremarkable());
    std::vector<std::vector<std::string>> section_sentences(tpl_.size());

    for (const std::string& sentence : split_sentences(parts.findings)) {
        std::string processed = combined ? remove_redundant_phrases(sentence) : sentence;
        std::string lowered = to_lower(processed);
        for (const auto& [section_name, keywords] : keyword_table()) {
            auto index = tpl_.index_of(section_name);
            if (!index) continue;
            bool hit = false;
            for (std::string_view keyword : keywords) {
                if (lowered.find(keyword) != std::string::npos) {
                    hit = true;
                    break;
                }
            }
            if (!hit) continue;
            auto& sentences = section_sentences[*index];
            if (std::find(sentences.begin(), sentences.end(), processed) == sentences.end())
                sentences.push_back(std::move(processed));
            break;
        }
    }
    for (std::size_t i = 0; i < tpl_.size(); ++i) {
        if (section_sentences[i].empty()) continue;
        std::string text;
        for (const std::string& sentence : section_sentences[i]) {
            if (!text.empty()) text.push_back(' ');
            text += sentence;
        }
        structured.sections[i] = SectionValue::findings(std::move(text));
    }

    for (const std::string& sentence : split_sentences(parts.impressions)) {
        std::string processed = combined ? remove_redundant_phrases(sentence) : sentence;
        if (split_ws_tokens(processed).size() < 2) continue;
        if (std::find(structured.impressions.begin(), structured.impressions.end(), processed) ==
            structured.impressions.end())
            structured.impressions.push_back(std::move(processed));
    }
    if (structured.impressions.empty()) structured.impressions.push_back("No acute findings.");

    if (findings_only) return render_sections(tpl_, structured);
    if (impressions_only) return render_impressions(structured);
    return render_structured(tpl_, structured);
}

std::string MockGateway::respond(std::string_view prompt) const {
    switch (behavior_) {
        case MockBehavior::Faithful: return faithful(prompt);
        case MockBehavior::Garbage: return std::string(kGarbageText);
        case MockBehavior::LetterImpressions: {
            // Well-formed sections, impressions as one letter per line.
            StructuredReport structured;
            structured.sections.assign(tpl_.size(), SectionValue::unremarkable());
            std::string_view report = extract_block(prompt, pm::kReportBegin, pm::kReportEnd);
            ReportParts parts = split_report(report);
            std::string word = "mass";
            for (std::string_view token : split_ws_tokens(parts.impressions)) {
                std::string letters;
                for (char c : token)
                    if (std::isalnum(static_cast<unsigned char>(c))) letters.push_back(lower(c));
                if (letters.size() >= 2) {
                    word = letters;
                    break;
                }
            }
            std::string out = render_sections(tpl_, structured);
            out += "IMPRESSIONS:\n";
            for (char c : word) {
                out.push_back(c);
                out.push_back('\n');
            }
            return out;
        }
        case MockBehavior::FailThenFix:
            if (prompt.find(pm::kFix) != std::string_view::npos) return faithful(prompt);
            return std::string(kGarbageText);
    }
    return {};
}

}  // namespace radstruct

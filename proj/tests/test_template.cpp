#include "radstruct/report_template.hpp"

#include "radstruct/errors.hpp"
#include "support/test_util.hpp"

#include <random>
#include <string>

#include "doctest.h"

using namespace radstruct;

namespace {

std::string sample_text() {
    StructuredReport report;
    report.sections.assign(TemplateSpec::v1().size(), SectionValue::unremarkable());
    report.sections[0] = SectionValue::findings("Stable 4 mm right lung nodule.");
    report.sections[7] = SectionValue::none();
    report.impressions = {"No acute findings.", "Stable lung nodule, follow-up advised."};
    return render_structured(TemplateSpec::v1(), report);
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
    auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_SUITE("template") {

TEST_CASE("canonical template is the fixed versioned list") {
    const TemplateSpec& tpl = TemplateSpec::v1();
    CHECK(tpl.size() == 14);
    CHECK(tpl.sections().front().name == "Chest: Lungs/Airways");
    CHECK(tpl.sections().front().order_index == 0);
    CHECK(tpl.sections().back().name == "Whole-body: Lymph Nodes/Bones/Soft Tissues");
    for (std::size_t i = 0; i < tpl.size(); ++i)
        CHECK(tpl.sections()[i].order_index == static_cast<int>(i));
    CHECK(TemplateSpec::v1().sections() == tpl.sections());  // stable across calls
}

TEST_CASE("template asset file matches the built-in list") {
    const TemplateSpec from_file = TemplateSpec::resolve("v1", RADSTRUCT_REPO_ROOT);
    CHECK(from_file.sections() == TemplateSpec::v1().sections());
    CHECK_THROWS_AS(TemplateSpec::resolve("v999", RADSTRUCT_REPO_ROOT), ConfigError);
}

TEST_CASE("render then parse is the identity on valid reports") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const StructuredReport report = testutil::random_structured_report(rng);
        const std::string text = render_structured(TemplateSpec::v1(), report);
        const ParseResult result = parse_structured(TemplateSpec::v1(), text);
        REQUIRE(result.ok());
        CHECK(*result.report == report);
    }
}

TEST_CASE("render is deterministic") {
    std::mt19937_64 rng(11);
    const StructuredReport report = testutil::random_structured_report(rng);
    CHECK(render_structured(TemplateSpec::v1(), report) ==
          render_structured(TemplateSpec::v1(), report));
}

TEST_CASE("missing header is named") {
    std::string text = replace_once(sample_text(), "== Abdomen: Adrenals ==\nNone\n", "");
    const ParseResult result = parse_structured(TemplateSpec::v1(), text);
    REQUIRE_FALSE(result.ok());
    CHECK(result.failure->reason == ParseReason::MissingHeader);
    CHECK(result.failure->message.find("Adrenals") != std::string::npos);
}

TEST_CASE("duplicated header is rejected with both lines known") {
    std::string text = sample_text();
    text = replace_once(text, "== Abdomen: Spleen ==",
                        "== Chest: Pleura ==\nUnremarkable\n== Abdomen: Spleen ==");
    const ParseResult result = parse_structured(TemplateSpec::v1(), text);
    REQUIRE_FALSE(result.ok());
    CHECK(result.failure->reason == ParseReason::DuplicateHeader);
    CHECK(result.failure->message.find("first at line") != std::string::npos);
}

TEST_CASE("out-of-order headers are rejected") {
    std::string text = sample_text();
    // Swap the first two section blocks.
    text = replace_once(text, "== Chest: Lungs/Airways ==\nStable 4 mm right lung nodule.\n",
                        "@@FIRST@@");
    text = replace_once(text, "== Chest: Pleura ==\nUnremarkable\n",
                        "== Chest: Lungs/Airways ==\nStable 4 mm right lung nodule.\n");
    text = replace_once(text, "@@FIRST@@", "== Chest: Pleura ==\nUnremarkable\n");
    const ParseResult result = parse_structured(TemplateSpec::v1(), text);
    REQUIRE_FALSE(result.ok());
    CHECK(result.failure->reason == ParseReason::OutOfOrderHeader);
}

TEST_CASE("unknown header is rejected") {
    std::string text = replace_once(sample_text(), "== Chest: Pleura ==",
                                    "== Brain ==\nUnremarkable\n== Chest: Pleura ==");
    const ParseResult result = parse_structured(TemplateSpec::v1(), text);
    REQUIRE_FALSE(result.ok());
    CHECK(result.failure->reason == ParseReason::UnknownHeader);
    CHECK(result.failure->message.find("Brain") != std::string::npos);
}

TEST_CASE("empty section body is rejected") {
    std::string text = replace_once(sample_text(), "== Chest: Pleura ==\nUnremarkable\n",
                                    "== Chest: Pleura ==\n");
    const ParseResult result = parse_structured(TemplateSpec::v1(), text);
    REQUIRE_FALSE(result.ok());
    CHECK(result.failure->reason == ParseReason::EmptySectionBody);
}

TEST_CASE("missing impressions block is rejected") {
    std::string text = sample_text();
    text = text.substr(0, text.find("IMPRESSIONS:"));
    const ParseResult result = parse_structured(TemplateSpec::v1(), text);
    REQUIRE_FALSE(result.ok());
    CHECK(result.failure->reason == ParseReason::MissingImpressions);

    // The sections half alone still parses in SectionsOnly mode.
    CHECK(parse_structured(TemplateSpec::v1(), text, ParseMode::SectionsOnly).ok());
}

TEST_CASE("empty impressions block is rejected") {
    std::string text = sample_text();
    text = text.substr(0, text.find("IMPRESSIONS:")) + "IMPRESSIONS:\n";
    const ParseResult result = parse_structured(TemplateSpec::v1(), text);
    REQUIRE_FALSE(result.ok());
    CHECK(result.failure->reason == ParseReason::EmptyImpressions);
}

TEST_CASE("letter-per-line impressions fail the two-word rule") {
    std::string text = sample_text();
    text = text.substr(0, text.find("IMPRESSIONS:")) + "IMPRESSIONS:\nm\na\ns\ns\n";
    const ParseResult result = parse_structured(TemplateSpec::v1(), text);
    REQUIRE_FALSE(result.ok());
    CHECK(result.failure->reason == ParseReason::ImpressionItemTooShort);
    CHECK(result.failure->line > 0);
}

TEST_CASE("impression list markers are accepted and normalized") {
    std::string text = sample_text();
    text = text.substr(0, text.find("IMPRESSIONS:")) +
           "IMPRESSIONS:\n- dash item here\n* star item here\n2. numbered item here\nplain item here\n";
    const ParseResult result = parse_structured(TemplateSpec::v1(), text);
    REQUIRE(result.ok());
    CHECK(result.report->impressions ==
          std::vector<std::string>{"dash item here", "star item here", "numbered item here",
                                   "plain item here"});
}

TEST_CASE("sentinels parse case-insensitively and render canonically") {
    std::string text = replace_once(sample_text(), "== Chest: Pleura ==\nUnremarkable",
                                    "== Chest: Pleura ==\nUNREMARKABLE");
    text = replace_once(text, "== Abdomen: Adrenals ==\nNone", "== Abdomen: Adrenals ==\nnone");
    const ParseResult result = parse_structured(TemplateSpec::v1(), text);
    REQUIRE(result.ok());
    CHECK(result.report->sections[1].kind == SectionValue::Kind::Unremarkable);
    CHECK(result.report->sections[7].kind == SectionValue::Kind::None);
    const std::string rendered = render_structured(TemplateSpec::v1(), *result.report);
    CHECK(rendered.find("UNREMARKABLE") == std::string::npos);
    CHECK(rendered == sample_text());
}

TEST_CASE("parse is total on arbitrary input") {
    std::mt19937_64 rng(23);
    const char alphabet[] = "ab =\n-*.:{}IMPRESSIONS/";
    for (int i = 0; i < 500; ++i) {
        std::string junk;
        const std::size_t length = rng() % 160;
        for (std::size_t k = 0; k < length; ++k)
            junk.push_back(alphabet[rng() % (sizeof(alphabet) - 1)]);
        CHECK_NOTHROW(parse_structured(TemplateSpec::v1(), junk));
    }
    CHECK_FALSE(parse_structured(TemplateSpec::v1(), "").ok());
}

TEST_CASE("render refuses invariant violations by name") {
    const TemplateSpec& tpl = TemplateSpec::v1();
    StructuredReport report;
    report.sections.assign(tpl.size(), SectionValue::unremarkable());
    report.impressions = {"No acute findings."};

    SUBCASE("wrong section count") {
        report.sections.pop_back();
        CHECK_THROWS_WITH_AS(render_structured(tpl, report),
                             doctest::Contains("sections"), std::invalid_argument);
    }
    SUBCASE("empty impressions") {
        report.impressions.clear();
        CHECK_THROWS_WITH_AS(render_structured(tpl, report),
                             doctest::Contains("impressions"), std::invalid_argument);
    }
    SUBCASE("one-word impression") {
        report.impressions = {"short"};
        CHECK_THROWS_WITH_AS(render_structured(tpl, report),
                             doctest::Contains("fewer than two words"), std::invalid_argument);
    }
    SUBCASE("header line inside a section body") {
        report.sections[0] = SectionValue::findings("text\n== Chest: Pleura ==");
        CHECK_THROWS_WITH_AS(render_structured(tpl, report),
                             doctest::Contains("section-header"), std::invalid_argument);
    }
    SUBCASE("edge whitespace in findings") {
        report.sections[0] = SectionValue::findings(" padded ");
        CHECK_THROWS_AS(render_structured(tpl, report), std::invalid_argument);
    }
}

TEST_CASE("skeleton lists every header once") {
    const std::string skeleton = template_skeleton(TemplateSpec::v1());
    for (const OrganKey& key : TemplateSpec::v1().sections()) {
        const std::string header = "== " + key.name + " ==";
        const auto first = skeleton.find(header);
        REQUIRE(first != std::string::npos);
        CHECK(skeleton.find(header, first + 1) == std::string::npos);
    }
    CHECK(skeleton.find("IMPRESSIONS:") != std::string::npos);
}

TEST_CASE("partial parse modes ignore the irrelevant half") {
    const std::string text = sample_text();
    const ParseResult sections = parse_structured(TemplateSpec::v1(), text, ParseMode::SectionsOnly);
    REQUIRE(sections.ok());
    CHECK(sections.report->impressions.empty());
    CHECK(sections.report->sections.size() == 14);

    const ParseResult impressions =
        parse_structured(TemplateSpec::v1(), text, ParseMode::ImpressionsOnly);
    REQUIRE(impressions.ok());
    CHECK(impressions.report->sections.empty());
    CHECK(impressions.report->impressions.size() == 2);

    // Impressions-only mode tolerates malformed leading sections.
    const ParseResult tolerant = parse_structured(
        TemplateSpec::v1(), "random prose\nIMPRESSIONS:\n- two words\n", ParseMode::ImpressionsOnly);
    CHECK(tolerant.ok());

    // ... but not header fences inside the impressions block itself.
    const ParseResult trailing_header = parse_structured(
        TemplateSpec::v1(), "IMPRESSIONS:\n- two words\n== Chest: Pleura ==\n",
        ParseMode::ImpressionsOnly);
    REQUIRE_FALSE(trailing_header.ok());
    CHECK(trailing_header.failure->reason == ParseReason::OutOfOrderHeader);
}

}  // TEST_SUITE

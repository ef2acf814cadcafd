#include "radstruct/metrics.hpp"

#include "support/test_util.hpp"

#include <random>

#include "doctest.h"

using namespace radstruct;

TEST_SUITE("metrics") {

TEST_CASE("count_words is whitespace-run counting with markup stripped") {
    CHECK(count_words("") == 0);
    CHECK(count_words("   \n \t ") == 0);
    CHECK(count_words("there is a 5 mm nodule") == 6);
    CHECK(count_words("- No acute findings.") == 3);
    CHECK(count_words("* starred item") == 2);
    CHECK(count_words("12. numbered item") == 2);
    CHECK(count_words("== Chest: Pleura ==") == 2);
    CHECK(count_words("Unremarkable") == 1);
    CHECK(count_words("None") == 1);
    CHECK(count_words("state-of-the-art scanner") == 2);
    CHECK(count_words("IMPRESSIONS:") == 1);
    // Marker only strips at line start; later tokens count.
    CHECK(count_words("value - value") == 3);
    CHECK(count_words("5 mm nodule.") == 3);
}

TEST_CASE("count_words is stable under re-rendering") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const StructuredReport report = testutil::random_structured_report(rng);
        const std::string once = render_structured(TemplateSpec::v1(), report);
        const auto parsed = parse_structured(TemplateSpec::v1(), once);
        REQUIRE(parsed.ok());
        const std::string twice = render_structured(TemplateSpec::v1(), *parsed.report);
        CHECK(count_words(once) == count_words(twice));
    }
}

TEST_CASE("conciseness matches the published word counts") {
    CHECK(conciseness(190, 388).display() == "48.97");
    CHECK(conciseness(242, 388).display() == "62.37");
    CHECK(conciseness(388, 388).display() == "100.00");
    CHECK(conciseness(388, 388).value() == 100.0);
    CHECK(conciseness(110, 100).display() == "110.00");
    CHECK(conciseness(110, 100).over_100());
    CHECK_FALSE(conciseness(100, 100).over_100());
    CHECK(conciseness(0, 10).display() == "0.00");
}

TEST_CASE("conciseness rejects undefined input") {
    CHECK_THROWS_AS(conciseness(10, 0), std::invalid_argument);
    CHECK_THROWS_AS(conciseness(-1, 10), std::invalid_argument);
}

TEST_CASE("conciseness is exactly 100 on identity and strictly monotone") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const std::int64_t w = 1 + static_cast<std::int64_t>(rng() % 2000);
        CHECK(conciseness(w, w).value() == 100.0);
        CHECK(conciseness(w, w).display() == "100.00");
    }
    for (int i = 0; i < 100; ++i) {
        const std::int64_t in = 2 + static_cast<std::int64_t>(rng() % 500);
        const std::int64_t out = static_cast<std::int64_t>(rng() % 500);
        CHECK(conciseness(out, in).value() < conciseness(out + 1, in).value());
    }
}

TEST_CASE("classify_error follows the two-kind taxonomy") {
    const TemplateSpec& tpl = TemplateSpec::v1();
    const ParseFailure failure{ParseReason::MissingHeader, 1, "x"};

    SUBCASE("garbage prose after two attempts") {
        CHECK(classify_error(tpl, "free prose with no structure at all", failure, 2) ==
              ErrorKind::FailureToStructure);
    }
    SUBCASE("valid sections with letter impressions") {
        StructuredReport report;
        report.sections.assign(tpl.size(), SectionValue::unremarkable());
        const std::string text = render_sections(tpl, report) + "IMPRESSIONS:\nm\na\ns\ns\n";
        CHECK(classify_error(tpl, text, failure, 2) == ErrorKind::ImpressionListError);
    }
    SUBCASE("valid sections, mostly letter impressions mixed with one real item") {
        StructuredReport report;
        report.sections.assign(tpl.size(), SectionValue::unremarkable());
        const std::string text =
            render_sections(tpl, report) + "IMPRESSIONS:\nm\na\ns\ns\n- one real item\n";
        CHECK(classify_error(tpl, text, failure, 2) == ErrorKind::ImpressionListError);
    }
    SUBCASE("broken sections with letter impressions still fail to structure") {
        CHECK(classify_error(tpl, "no headers\nIMPRESSIONS:\nm\na\n", failure, 2) ==
              ErrorKind::FailureToStructure);
    }
    SUBCASE("guarded precondition") {
        CHECK_THROWS_AS(classify_error(tpl, "anything", failure, 1), std::logic_error);
    }
}

}  // TEST_SUITE

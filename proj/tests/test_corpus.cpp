#include "radstruct/corpus.hpp"

#include "radstruct/errors.hpp"
#include "radstruct/outcome.hpp"
#include "support/test_util.hpp"

#include <string>

#include "doctest.h"

using namespace radstruct;
using testutil::TempDir;

namespace {

std::string repeat_words(int n) {
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (!out.empty()) out.push_back(' ');
        out += "w" + std::to_string(i);
    }
    return out;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("jsonl records map directly onto reports") {
    TempDir dir;
    testutil::write_file(dir.file("c.jsonl"),
                         R"({"id":"r1","radiologist":"R1","findings":"a b","impressions":"c d"})"
                         "\n"
                         R"({"id":"r2","radiologist":"R2","findings":"e","impressions":"f"})"
                         "\n");
    const Corpus corpus = load_corpus(dir.file("c.jsonl"), CorpusFormat::Jsonl);
    REQUIRE(corpus.reports.size() == 2);
    CHECK(corpus.reports[0] == RawReport{"r1", "R1", "a b", "c d"});
    CHECK(corpus.reports[1] == RawReport{"r2", "R2", "e", "f"});
}

TEST_CASE("empty file loads as an empty corpus") {
    TempDir dir;
    testutil::write_file(dir.file("empty.jsonl"), "");
    CHECK(load_corpus(dir.file("empty.jsonl"), CorpusFormat::Jsonl).reports.empty());
}

TEST_CASE("duplicate ids name both lines") {
    TempDir dir;
    testutil::write_file(dir.file("dup.jsonl"),
                         R"({"id":"r1","radiologist":"R1","findings":"a","impressions":"b"})"
                         "\n"
                         R"({"id":"r1","radiologist":"R2","findings":"c","impressions":"d"})"
                         "\n");
    CHECK_THROWS_WITH_AS(load_corpus(dir.file("dup.jsonl"), CorpusFormat::Jsonl),
                         doctest::Contains("first at line 1"), DataError);
}

TEST_CASE("malformed records name the line and missing field") {
    TempDir dir;
    SUBCASE("bad json") {
        testutil::write_file(dir.file("bad.jsonl"), "{oops\n");
        CHECK_THROWS_WITH_AS(load_corpus(dir.file("bad.jsonl"), CorpusFormat::Jsonl),
                             doctest::Contains(":1:"), DataError);
    }
    SUBCASE("missing field") {
        testutil::write_file(dir.file("missing.jsonl"),
                             "{\"id\":\"r1\",\"radiologist\":\"R1\",\"findings\":\"a\"}\n");
        CHECK_THROWS_WITH_AS(load_corpus(dir.file("missing.jsonl"), CorpusFormat::Jsonl),
                             doctest::Contains("impressions"), DataError);
    }
    SUBCASE("blank findings") {
        testutil::write_file(
            dir.file("blank.jsonl"),
            R"({"id":"r1","radiologist":"R1","findings":"  ","impressions":"b"})" "\n");
        CHECK_THROWS_AS(load_corpus(dir.file("blank.jsonl"), CorpusFormat::Jsonl), DataError);
    }
}

TEST_CASE("invalid UTF-8 is a load error, not a substitution") {
    TempDir dir;
    std::string content = R"({"id":"r1","radiologist":"R1","findings":"a)";
    content += static_cast<char>(0xFF);
    content += R"(","impressions":"b"})" "\n";
    testutil::write_file(dir.file("bad_utf8.jsonl"), content);
    CHECK_THROWS_WITH_AS(load_corpus(dir.file("bad_utf8.jsonl"), CorpusFormat::Jsonl),
                         doctest::Contains("UTF-8"), DataError);
}

TEST_CASE("save then load is the identity for both formats") {
    TempDir dir;
    Corpus corpus;
    corpus.reports = {
        {"r1", "R1", "findings with, comma", "impressions \"quoted\""},
        {"r2", "R2", "multi\nline findings", "unicode \xC3\xA9 text"},
        {"r3", "R7", "plain", "short one"},
    };

    SUBCASE("jsonl") {
        save_corpus(corpus, dir.file("round.jsonl"), CorpusFormat::Jsonl);
        CHECK(load_corpus(dir.file("round.jsonl"), CorpusFormat::Jsonl).reports == corpus.reports);
    }
    SUBCASE("csv") {
        save_corpus(corpus, dir.file("round.csv"), CorpusFormat::Csv);
        CHECK(load_corpus(dir.file("round.csv"), CorpusFormat::Csv).reports == corpus.reports);
    }
}

TEST_CASE("csv header must match the documented schema") {
    TempDir dir;
    testutil::write_file(dir.file("bad.csv"), "id,who,findings,impressions\nr1,R1,a,b\n");
    CHECK_THROWS_WITH_AS(load_corpus(dir.file("bad.csv"), CorpusFormat::Csv),
                         doctest::Contains("header"), DataError);
}

TEST_CASE("summary reproduces the documented ranges") {
    Corpus corpus;
    corpus.reports = {
        {"a", "R1", repeat_words(100), repeat_words(82)},   // 182 words
        {"b", "R2", repeat_words(300), repeat_words(44)},   // 344
        {"c", "R1", repeat_words(900), repeat_words(81)},   // 981
    };
    const CorpusSummary summary = corpus_summary(corpus);
    CHECK(summary.total_reports == 3);
    CHECK(summary.words.min == 182);
    CHECK(summary.words.max == 981);
    CHECK(summary.words.median == doctest::Approx(344.0));
    CHECK(summary.per_radiologist ==
          std::vector<std::pair<std::string, std::size_t>>{{"R1", 2}, {"R2", 1}});
}

TEST_CASE("summary handles singleton and even-sized corpora") {
    Corpus one;
    one.reports = {{"a", "R1", repeat_words(6), repeat_words(4)}};
    const CorpusSummary single = corpus_summary(one);
    CHECK(single.words.min == 10);
    CHECK(single.words.max == 10);
    CHECK(single.words.mean == doctest::Approx(10.0));
    CHECK(single.words.median == doctest::Approx(10.0));

    Corpus two;
    two.reports = {{"a", "R1", repeat_words(60), repeat_words(40)},
                   {"b", "R1", repeat_words(150), repeat_words(50)}};
    const CorpusSummary even = corpus_summary(two);
    CHECK(even.words.mean == doctest::Approx(150.0));
    CHECK(even.words.median == doctest::Approx(150.0));
}

TEST_CASE("summary of an empty corpus is an error") {
    CHECK_THROWS_AS(corpus_summary(Corpus{}), DataError);
}

TEST_CASE("outcomes persist and reload structurally equal") {
    TempDir dir;
    std::vector<PipelineOutcome> outcomes;
    outcomes.push_back(testutil::ok_outcome("r1", "R1", StrategyKind::CThenS, 50, 100));
    outcomes.push_back(testutil::format_error_outcome("r2", "R2", StrategyKind::SThenC,
                                                      ErrorKind::ImpressionListError));
    PipelineOutcome transport;
    transport.report_id = "r3";
    transport.radiologist = "R3";
    transport.strategy = StrategyKind::S;
    transport.status = OutcomeStatus::TransportError;
    transport.transport_message = "cannot reach http://x";
    outcomes.push_back(transport);

    const std::string path = dir.file("results.jsonl");
    persist_outcomes(outcomes, path);
    CHECK(load_outcomes(path) == outcomes);

    SUBCASE("empty list round-trips through an empty file") {
        persist_outcomes({}, dir.file("empty.jsonl"));
        CHECK(load_outcomes(dir.file("empty.jsonl")).empty());
    }
}

TEST_CASE("unwritable path raises an io error with the path") {
    TempDir dir;
    const std::string path = dir.file("no_such_dir/out.jsonl");
    CHECK_THROWS_WITH_AS(persist_outcomes({}, path), doctest::Contains("no_such_dir"), IoError);
    Corpus corpus;
    corpus.reports = {{"a", "R1", "x", "y"}};
    CHECK_THROWS_AS(save_corpus(corpus, path, CorpusFormat::Jsonl), IoError);
}

}  // TEST_SUITE

#include "radstruct/commands.hpp"

#include "radstruct/corpus.hpp"
#include "radstruct/errors.hpp"
#include "radstruct/report_template.hpp"
#include "radstruct/synthetic.hpp"
#include "support/test_util.hpp"

#include <cstdlib>
#include <sstream>

#include "doctest.h"

using namespace radstruct;
using testutil::TempDir;

namespace {

std::string write_synth_corpus(const TempDir& dir, std::size_t reports, const char* name) {
    const Corpus corpus = synth::make_corpus(reports, 1234);
    const std::string path = dir.file(name);
    save_corpus(corpus, path, CorpusFormat::Jsonl);
    return path;
}

RunConfig base_config(const std::string& corpus, const std::string& out_dir) {
    RunConfig config;
    config.corpus_path = corpus;
    config.out_dir = out_dir;
    config.mock = MockBehavior::Faithful;
    config.assets_dir = RADSTRUCT_REPO_ROOT;
    return config;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("mock run succeeds and writes every artifact") {
    TempDir dir;
    const std::string corpus = write_synth_corpus(dir, 4, "corpus.jsonl");
    std::ostringstream log;
    const int rc = cmd_run(base_config(corpus, dir.file("out")), log);
    CHECK(rc == kExitOk);
    for (const char* name : {"results.jsonl", "run_manifest.json", "table1.csv", "table2.csv",
                             "fig2.json", "fig3.json", "fig4.json"}) {
        INFO(name);
        CHECK_FALSE(testutil::slurp(dir.file(std::string("out/") + name)).empty());
    }
    CHECK(load_outcomes(dir.file("out/results.jsonl")).size() == 4 * 5);
}

TEST_CASE("identical configs produce byte-identical outputs") {
    TempDir dir;
    const std::string corpus = write_synth_corpus(dir, 4, "corpus.jsonl");
    std::ostringstream log;
    RunConfig config_a = base_config(corpus, dir.file("out_a"));
    RunConfig config_b = base_config(corpus, dir.file("out_b"));
    REQUIRE(cmd_run(config_a, log) == kExitOk);
    REQUIRE(cmd_run(config_b, log) == kExitOk);
    for (const char* name : {"results.jsonl", "run_manifest.json", "table1.csv", "table2.csv",
                             "fig2.json", "fig3.json", "fig4.json"}) {
        INFO(name);
        CHECK(testutil::slurp(dir.file(std::string("out_a/") + name)) ==
              testutil::slurp(dir.file(std::string("out_b/") + name)));
    }
}

TEST_CASE("strategy filtering limits the outcome set") {
    TempDir dir;
    const std::string corpus = write_synth_corpus(dir, 3, "corpus.jsonl");
    RunConfig config = base_config(corpus, dir.file("out"));
    config.strategies = {StrategyKind::CThenS};
    std::ostringstream log;
    REQUIRE(cmd_run(config, log) == kExitOk);
    const auto outcomes = load_outcomes(dir.file("out/results.jsonl"));
    REQUIRE(outcomes.size() == 3);
    for (const auto& outcome : outcomes) CHECK(outcome.strategy == StrategyKind::CThenS);
}

TEST_CASE("stats phase is idempotent over the results file") {
    TempDir dir;
    const std::string corpus = write_synth_corpus(dir, 5, "corpus.jsonl");
    std::ostringstream log;
    REQUIRE(cmd_run(base_config(corpus, dir.file("out")), log) == kExitOk);
    REQUIRE(cmd_stats(dir.file("out/results.jsonl"), dir.file("redo"), log) == kExitOk);
    for (const char* name : {"table1.csv", "table2.csv", "fig2.json", "fig3.json", "fig4.json"}) {
        INFO(name);
        CHECK(testutil::slurp(dir.file(std::string("out/") + name)) ==
              testutil::slurp(dir.file(std::string("redo/") + name)));
    }
}

TEST_CASE("empty results still produce valid empty tables") {
    TempDir dir;
    testutil::write_file(dir.file("results.jsonl"), "");
    std::ostringstream log;
    CHECK(cmd_stats(dir.file("results.jsonl"), dir.file("out"), log) == kExitOk);
    CHECK(testutil::slurp(dir.file("out/table1.csv")) == "radiologist,reports\nTotal,0\n");
}

TEST_CASE("malformed results file is an io-level failure") {
    TempDir dir;
    testutil::write_file(dir.file("results.jsonl"), "{broken\n");
    std::ostringstream log;
    CHECK(cmd_stats(dir.file("results.jsonl"), dir.file("out"), log) == kExitIo);
}

TEST_CASE("configuration errors exit with the config code") {
    TempDir dir;
    const std::string corpus = write_synth_corpus(dir, 2, "corpus.jsonl");
    std::ostringstream log;

    SUBCASE("mock and endpoint are mutually exclusive") {
        RunConfig config = base_config(corpus, dir.file("out"));
        config.endpoint = "http://127.0.0.1:11434";
        CHECK(cmd_run(config, log) == kExitConfig);
    }
    SUBCASE("workers must be positive") {
        RunConfig config = base_config(corpus, dir.file("out"));
        config.workers = 0;
        CHECK(cmd_run(config, log) == kExitConfig);
    }
    SUBCASE("unknown template version") {
        RunConfig config = base_config(corpus, dir.file("out"));
        config.template_version = "v999";
        CHECK(cmd_run(config, log) == kExitConfig);
    }
    SUBCASE("unknown format") {
        RunConfig config = base_config(corpus, dir.file("out"));
        config.format = "xml";
        CHECK(cmd_run(config, log) == kExitConfig);
    }
}

TEST_CASE("missing corpus file is an io error") {
    TempDir dir;
    RunConfig config = base_config(dir.file("nope.jsonl"), dir.file("out"));
    std::ostringstream log;
    CHECK(cmd_run(config, log) == kExitIo);
}

TEST_CASE("unreachable endpoint fails fast with the transport code") {
    TempDir dir;
    const std::string corpus = write_synth_corpus(dir, 2, "corpus.jsonl");
    RunConfig config = base_config(corpus, dir.file("out"));
    config.mock.reset();
    config.endpoint = "http://127.0.0.1:1";
    config.timeout_secs = 2;
    std::ostringstream log;
    CHECK(cmd_run(config, log) == kExitTransport);
}

TEST_CASE("format inference follows the extension unless overridden") {
    CHECK(resolve_format("", "x.jsonl") == CorpusFormat::Jsonl);
    CHECK(resolve_format("", "x.csv") == CorpusFormat::Csv);
    CHECK(resolve_format("jsonl", "x.csv") == CorpusFormat::Jsonl);
    CHECK(resolve_format("csv", "x.jsonl") == CorpusFormat::Csv);
    CHECK_THROWS_AS(resolve_format("xml", "x"), ConfigError);
}

TEST_CASE("validate prints a verdict per the template contract") {
    TempDir dir;
    StructuredReport report;
    report.sections.assign(TemplateSpec::v1().size(), SectionValue::unremarkable());
    report.impressions = {"No acute findings."};
    const std::string text = render_structured(TemplateSpec::v1(), report);

    SUBCASE("canonical sample is OK") {
        testutil::write_file(dir.file("good.txt"), text);
        std::ostringstream log;
        CHECK(cmd_validate(dir.file("good.txt"), "v1", RADSTRUCT_REPO_ROOT, log) == kExitOk);
        CHECK(log.str() == "OK\n");
    }
    SUBCASE("missing impressions names the failure and line") {
        testutil::write_file(dir.file("bad.txt"), text.substr(0, text.find("IMPRESSIONS:")));
        std::ostringstream log;
        CHECK(cmd_validate(dir.file("bad.txt"), "v1", RADSTRUCT_REPO_ROOT, log) == kExitOk);
        CHECK(log.str().find("missing-impressions") != std::string::npos);
        CHECK(log.str().find("line") != std::string::npos);
    }
    SUBCASE("letter-per-line impressions get the specific diagnostic") {
        testutil::write_file(dir.file("letters.txt"),
                             text.substr(0, text.find("IMPRESSIONS:")) + "IMPRESSIONS:\nm\na\n");
        std::ostringstream log;
        CHECK(cmd_validate(dir.file("letters.txt"), "v1", RADSTRUCT_REPO_ROOT, log) == kExitOk);
        CHECK(log.str().find("impression-item-too-short") != std::string::npos);
    }
    SUBCASE("unreadable file is an io error") {
        std::ostringstream log;
        CHECK(cmd_validate(dir.file("absent.txt"), "v1", RADSTRUCT_REPO_ROOT, log) == kExitIo);
    }
}

TEST_CASE("built binary smoke test" * doctest::skip(std::getenv("RADSTRUCT_BIN") == nullptr)) {
    const char* binary = std::getenv("RADSTRUCT_BIN");
    REQUIRE(binary != nullptr);
    TempDir dir;
    const std::string corpus = write_synth_corpus(dir, 2, "corpus.jsonl");
    const std::string command = std::string("\"") + binary + "\" run --mock faithful --corpus \"" +
                                corpus + "\" --out \"" + dir.file("out") + "\" --assets-dir \"" +
                                RADSTRUCT_REPO_ROOT + "\" > /dev/null 2>&1";
    CHECK(std::system(command.c_str()) == 0);
    CHECK_FALSE(testutil::slurp(dir.file("out/results.jsonl")).empty());

    const std::string bad = std::string("\"") + binary + "\" run --mock faithful --endpoint x "
                            "--corpus \"" + corpus + "\" > /dev/null 2>&1";
    CHECK(std::system(bad.c_str()) != 0);

    // Key=value config file supplies defaults for the run subcommand.
    testutil::write_file(dir.file("run.cfg"),
                         "[run]\ncorpus=\"" + corpus + "\"\nmock=faithful\nout=\"" +
                             dir.file("cfg_out") + "\"\nassets-dir=\"" + RADSTRUCT_REPO_ROOT +
                             "\"\n");
    const std::string configured = std::string("\"") + binary + "\" --config \"" +
                                   dir.file("run.cfg") + "\" run > /dev/null 2>&1";
    CHECK(std::system(configured.c_str()) == 0);
    CHECK_FALSE(testutil::slurp(dir.file("cfg_out/results.jsonl")).empty());
}

}  // TEST_SUITE

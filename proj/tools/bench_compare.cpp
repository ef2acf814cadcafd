// Benchmark: serial reference runner vs the OpenMP runner on a synthetic
// corpus with the faithful mock backend, verifying identical results.

#include "radstruct/mock_gateway.hpp"
#include "radstruct/strategies.hpp"
#include "radstruct/synthetic.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

using namespace radstruct;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t report_count = 200;
    if (argc > 1) report_count = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));

    const Corpus corpus = synth::make_corpus(report_count, 42);
    const TemplateSpec& tpl = TemplateSpec::v1();
    const PromptSet& prompts = PromptSet::v1();
    MockGateway gateway(MockBehavior::Faithful, tpl);
    const std::vector<Strategy>& strategies = all_strategies();

    std::printf("corpus: %zu reports x %zu strategies = %zu pairs\n", corpus.reports.size(),
                strategies.size(), corpus.reports.size() * strategies.size());

    RunOptions options;
    auto start = std::chrono::steady_clock::now();
    const auto serial = run_corpus_serial(corpus, strategies, gateway, prompts, tpl, options);
    const double serial_secs = seconds_since(start);
    std::printf("%-28s %8.3f s\n", "serial reference", serial_secs);

    for (int workers : {1, 2, 4, 8, 16}) {
        options.workers = workers;
        start = std::chrono::steady_clock::now();
        const auto parallel = run_corpus(corpus, strategies, gateway, prompts, tpl, options);
        const double parallel_secs = seconds_since(start);
        const bool identical = parallel == serial;
        std::printf("openmp workers=%-13d %8.3f s  speedup %5.2fx  %s\n", workers, parallel_secs,
                    serial_secs / parallel_secs, identical ? "results identical" : "RESULTS DIFFER");
        if (!identical) return 1;
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace radstruct {

// One de-identified input report.
struct RawReport {
    std::string id;            // non-empty, unique within a corpus
    std::string radiologist;   // opaque label, e.g. "R1"
    std::string findings;      // >= 1 non-whitespace character
    std::string impressions;   // >= 1 non-whitespace character

    bool operator==(const RawReport&) const = default;
};

struct Corpus {
    std::vector<RawReport> reports;  // input order preserved
    std::string source_path;
};

enum class CorpusFormat { Jsonl, Csv };

// JSONL: one {"id","radiologist","findings","impressions"} object per line.
// CSV: RFC 4180 with header `id,radiologist,findings,impressions`.
// Text must be valid UTF-8; invalid bytes are a DataError, not replaced.
// Malformed records and duplicate ids raise DataError naming the line(s).
Corpus load_corpus(const std::string& path, CorpusFormat format);

void save_corpus(const Corpus& corpus, const std::string& path, CorpusFormat format);

struct WordCountStats {
    std::int64_t min = 0;
    std::int64_t max = 0;
    double mean = 0.0;
    double median = 0.0;
};

struct CorpusSummary {
    std::size_t total_reports = 0;
    std::vector<std::pair<std::string, std::size_t>> per_radiologist;  // sorted by label
    WordCountStats words;  // over count_words(findings + impressions) per report
};

// Throws DataError on an empty corpus.
CorpusSummary corpus_summary(const Corpus& corpus);

}  // namespace radstruct

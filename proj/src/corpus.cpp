#include "radstruct/corpus.hpp"

#include "radstruct/errors.hpp"
#include "radstruct/metrics.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace radstruct {

using detail::find_invalid_utf8;
using detail::trim;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return buffer.str();
}

void check_report_fields(const RawReport& report, std::size_t line, const std::string& path) {
    auto blank = [](const std::string& s) { return trim(s).empty(); };
    if (blank(report.id))
        throw DataError(path + ":" + std::to_string(line) + ": empty report id");
    if (blank(report.findings))
        throw DataError(path + ":" + std::to_string(line) + ": report '" + report.id +
                        "' has blank findings");
    if (blank(report.impressions))
        throw DataError(path + ":" + std::to_string(line) + ": report '" + report.id +
                        "' has blank impressions");
}

void check_duplicate(std::map<std::string, std::size_t>& seen, const RawReport& report,
                     std::size_t line, const std::string& path) {
    auto [it, inserted] = seen.emplace(report.id, line);
    if (!inserted)
        throw DataError(path + ":" + std::to_string(line) + ": duplicate report id '" + report.id +
                        "' (first at line " + std::to_string(it->second) + ")");
}

Corpus load_jsonl(const std::string& path, const std::string& content) {
    Corpus corpus;
    corpus.source_path = path;
    std::map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= content.size()) {
        std::size_t end = content.find('\n', start);
        std::string_view line(content.data() + start,
                              (end == std::string::npos ? content.size() : end) - start);
        ++line_no;
        start = (end == std::string::npos) ? content.size() + 1 : end + 1;
        if (trim(line).empty()) continue;

        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path + ":" + std::to_string(line_no) + ": malformed JSON record: " +
                            e.what());
        }
        RawReport report;
        for (const char* field : {"id", "radiologist", "findings", "impressions"}) {
            if (!record.contains(field) || !record[field].is_string())
                throw DataError(path + ":" + std::to_string(line_no) +
                                ": record is missing string field '" + field + "'");
        }
        report.id = record["id"].get<std::string>();
        report.radiologist = record["radiologist"].get<std::string>();
        report.findings = record["findings"].get<std::string>();
        report.impressions = record["impressions"].get<std::string>();
        check_report_fields(report, line_no, path);
        check_duplicate(seen, report, line_no, path);
        corpus.reports.push_back(std::move(report));
    }
    return corpus;
}

// RFC 4180: quoted fields may contain commas, newlines, and doubled quotes.
std::vector<std::vector<std::string>> parse_csv(const std::string& content,
                                                const std::string& path,
                                                std::vector<std::size_t>& record_lines) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t line = 1;
    std::size_t record_start_line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record_lines.push_back(record_start_line);
        record.clear();
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        char c = content[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field.empty() && !field_started) {
                    quoted = true;
                    field_started = true;
                } else {
                    throw DataError(path + ":" + std::to_string(line) +
                                    ": stray quote inside unquoted CSV field");
                }
                break;
            case ',': end_field(); break;
            case '\r':
                if (i + 1 < content.size() && content[i + 1] == '\n') break;  // swallowed with \n
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                record_start_line = line;
                break;
            default:
                field.push_back(c);
                field_started = true;
                break;
        }
    }
    if (quoted) throw DataError(path + ":" + std::to_string(line) + ": unterminated CSV quote");
    if (field_started || !record.empty()) end_record();
    // Drop blank trailing records produced by empty lines.
    while (!records.empty() && records.back().size() == 1 && records.back()[0].empty()) {
        records.pop_back();
        record_lines.pop_back();
    }
    return records;
}

const std::vector<std::string> kCsvHeader = {"id", "radiologist", "findings", "impressions"};

Corpus load_csv(const std::string& path, const std::string& content) {
    Corpus corpus;
    corpus.source_path = path;
    std::vector<std::size_t> record_lines;
    auto records = parse_csv(content, path, record_lines);
    if (records.empty()) return corpus;
    if (records[0] != kCsvHeader)
        throw DataError(path + ":1: CSV header must be exactly 'id,radiologist,findings,impressions'");
    std::map<std::string, std::size_t> seen;
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != 4)
            throw DataError(path + ":" + std::to_string(record_lines[r]) + ": expected 4 fields, got " +
                            std::to_string(records[r].size()));
        RawReport report{records[r][0], records[r][1], records[r][2], records[r][3]};
        check_report_fields(report, record_lines[r], path);
        check_duplicate(seen, report, record_lines[r], path);
        corpus.reports.push_back(std::move(report));
    }
    return corpus;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace

Corpus load_corpus(const std::string& path, CorpusFormat format) {
    std::string content = read_file(path);
    if (std::size_t bad = find_invalid_utf8(content); bad != std::string::npos) {
        std::size_t line = 1 + static_cast<std::size_t>(
                                   std::count(content.begin(), content.begin() + bad, '\n'));
        throw DataError(path + ":" + std::to_string(line) + ": invalid UTF-8 at byte offset " +
                        std::to_string(bad));
    }
    return format == CorpusFormat::Jsonl ? load_jsonl(path, content) : load_csv(path, content);
}

void save_corpus(const Corpus& corpus, const std::string& path, CorpusFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    if (format == CorpusFormat::Jsonl) {
        for (const RawReport& report : corpus.reports) {
            nlohmann::ordered_json record;
            record["id"] = report.id;
            record["radiologist"] = report.radiologist;
            record["findings"] = report.findings;
            record["impressions"] = report.impressions;
            out << record.dump() << '\n';
        }
    } else {
        out << "id,radiologist,findings,impressions\n";
        for (const RawReport& report : corpus.reports) {
            out << csv_escape(report.id) << ',' << csv_escape(report.radiologist) << ','
                << csv_escape(report.findings) << ',' << csv_escape(report.impressions) << '\n';
        }
    }
    out.flush();
    if (!out) throw IoError("write failure on '" + path + "'");
}

CorpusSummary corpus_summary(const Corpus& corpus) {
    if (corpus.reports.empty()) throw DataError("corpus is empty");

    CorpusSummary summary;
    summary.total_reports = corpus.reports.size();

    std::map<std::string, std::size_t> by_radiologist;
    std::vector<std::int64_t> word_counts;
    word_counts.reserve(corpus.reports.size());
    for (const RawReport& report : corpus.reports) {
        ++by_radiologist[report.radiologist];
        word_counts.push_back(count_words(report.findings + "\n" + report.impressions));
    }
    summary.per_radiologist.assign(by_radiologist.begin(), by_radiologist.end());

    std::sort(word_counts.begin(), word_counts.end());
    const std::size_t n = word_counts.size();
    summary.words.min = word_counts.front();
    summary.words.max = word_counts.back();
    std::int64_t sum = 0;
    for (std::int64_t c : word_counts) sum += c;
    summary.words.mean = static_cast<double>(sum) / static_cast<double>(n);
    summary.words.median = (n % 2 == 1)
                               ? static_cast<double>(word_counts[n / 2])
                               : (static_cast<double>(word_counts[n / 2 - 1]) +
                                  static_cast<double>(word_counts[n / 2])) / 2.0;
    return summary;
}

}  // namespace radstruct

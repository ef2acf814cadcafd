#include "radstruct/synthetic.hpp"

#include <array>
#include <random>

namespace radstruct::synth {

namespace {

// Verbose on purpose: organ keywords for the mock's mapping table plus the
// redundant phrases the condense stages are instructed to strip.
constexpr std::array<std::string_view, 22> kFindingsSentences = {
    "There is a small nodule in the right lung measuring 4 mm at this time.",
    "The lungs are clear without evidence of consolidation or atelectasis.",
    "There is a trace pleural effusion visualized on the left side.",
    "No pneumothorax is visualized at this time.",
    "The mediastinum is within the normal limits with no hilar enlargement.",
    "The heart is normal in size and the aorta is of the usual caliber.",
    "There is mild calcification of the coronary vessel walls.",
    "The liver is visualized and measures approximately 16 cm in span.",
    "There is a hypodense lesion within the liver measuring 8 mm.",
    "The gallbladder of the patient is unremarkable without stones.",
    "The spleen is normal in size without focal lesion.",
    "The pancreas is visualized and appears unremarkable at this time.",
    "The adrenal glands are unremarkable bilaterally.",
    "There is no hydronephrosis and the kidney parenchyma is normal.",
    "A small cyst within the left kidney measures approximately 9 mm.",
    "The stomach and bowel loops of the patient are unremarkable.",
    "There is no free fluid and no ascites within the peritoneum.",
    "The bladder is moderately distended and unremarkable.",
    "The prostate is mildly enlarged at this time.",
    "There is no pelvic adnexal mass visualized.",
    "There is no enlarged lymph node by size criteria.",
    "There is general osteopenia with degenerative changes of the spine.",
};

constexpr std::array<std::string_view, 8> kImpressionSentences = {
    "There is no evidence of metastatic disease at this time.",
    "Stable small lung nodule, follow-up in 12 months.",
    "The liver lesion of the patient is statistically unchanged.",
    "No acute abdominal or pelvic abnormality is visualized.",
    "Mild degenerative changes of the spine without fracture.",
    "Trace pleural effusion, likely physiologic.",
    "The kidney cyst measures approximately 9 mm and is benign.",
    "No enlarged lymph node is visualized at this time.",
};

}  // namespace

RawReport make_report(const std::string& id, const std::string& radiologist,
                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // Plain modulo keeps the stream identical across standard libraries.
    auto pick = [&rng](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

    RawReport report;
    report.id = id;
    report.radiologist = radiologist;

    const std::size_t findings_count = 10 + pick(7);   // 10..16 sentences
    for (std::size_t i = 0; i < findings_count; ++i) {
        if (!report.findings.empty()) report.findings.push_back(' ');
        report.findings += kFindingsSentences[pick(kFindingsSentences.size())];
    }

    const std::size_t impressions_count = 3 + pick(3);  // 3..5 sentences
    for (std::size_t i = 0; i < impressions_count; ++i) {
        if (!report.impressions.empty()) report.impressions.push_back(' ');
        report.impressions += kImpressionSentences[pick(kImpressionSentences.size())];
    }
    return report;
}

Corpus make_corpus(std::size_t report_count, std::uint64_t seed,
                   std::size_t radiologist_count) {
    Corpus corpus;
    corpus.source_path = "<synthetic>";
    if (radiologist_count == 0) radiologist_count = 1;
    corpus.reports.reserve(report_count);
    for (std::size_t i = 0; i < report_count; ++i) {
        char id[32];
        std::snprintf(id, sizeof(id), "synth-%04zu", i + 1);
        const std::string radiologist = "R" + std::to_string(i % radiologist_count + 1);
        corpus.reports.push_back(make_report(id, radiologist, seed ^ (0x9E3779B97F4A7C15ull * (i + 1))));
    }
    return corpus;
}

}  // namespace radstruct::synth

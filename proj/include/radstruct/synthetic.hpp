#pragma once

#include "radstruct/corpus.hpp"

#include <cstdint>
#include <string>

namespace radstruct::synth {

// Deterministic synthetic corpus for demos, benchmarks, and tests. Reports
// are verbose on purpose: findings sentences carry organ keywords the mock
// backend can map, plus the redundant phrases the condense stages remove.
// Same (count, seed, radiologists) always yields the same corpus.
Corpus make_corpus(std::size_t report_count, std::uint64_t seed,
                   std::size_t radiologist_count = 7);

RawReport make_report(const std::string& id, const std::string& radiologist,
                      std::uint64_t seed);

}  // namespace radstruct::synth

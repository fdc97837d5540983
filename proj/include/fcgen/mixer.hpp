#pragma once

#include "fcgen/formatter.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fcgen {

// Blend of function-call training records with a general-text corpus, the
// counter-forgetting measure applied before fine-tuning.

struct mix_spec {
    // fc : textbook record-count ratio; fc must be positive.
    uint32_t fc_parts       = 1;
    uint32_t textbook_parts = 1;
    uint64_t seed           = 0;

    enum class sampling_mode {
        head,           // first N corpus blocks
        seeded_uniform, // seeded draw without replacement
    };
    sampling_mode sampling = sampling_mode::seeded_uniform;
};

struct textbook_corpus {
    std::vector<std::string> blocks;
    size_t                   dropped = 0; // empty/whitespace-only entries
};

// JSON Lines with a `text` field per line; blank texts are dropped and
// counted.
textbook_corpus ingest_textbook(const std::filesystem::path & path);

struct mixed_record {
    enum class record_kind {
        function_call,
        textbook,
    };
    record_kind     kind = record_kind::function_call;
    training_record fc;   // kind == function_call
    std::string     text; // kind == textbook
};

// Keeps every fc record, adds round(|fc| * textbook_parts / fc_parts)
// corpus blocks, then applies one seeded global shuffle. Deterministic in
// (inputs, spec).
std::vector<mixed_record> mix(std::vector<training_record> fc,
                              const std::vector<std::string> & textbook, const mix_spec & spec);

void write_mixed_jsonl(const std::filesystem::path & path,
                       const std::vector<mixed_record> & records);
std::vector<mixed_record> read_mixed_jsonl(const std::filesystem::path & path);

} // namespace fcgen

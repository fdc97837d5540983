#pragma once

#include "fcgen/demonstration.hpp"
#include "fcgen/registry.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fcgen {

// The two fine-tuning layouts.
//
//   df1  input:  the question alone
//        output: rendered call, "<eoc>", newline, the triggered
//                function's description
//   df2  input:  all registered function descriptions, then the question
//        output: rendered call and "<eoc>" only
//
// df2 keeps every description out of the generation target, which is the
// point of the format: the model never learns to emit function metadata.
enum class data_format {
    df1,
    df2,
};

std::string_view to_string(data_format f);
data_format      parse_data_format(std::string_view text);

struct training_record {
    data_format format = data_format::df2;
    std::string input_text;
    std::string output_text;
    // meta
    std::string demo_id;
    std::string function;
};

struct render_options {
    // When set, DF2 description blocks are permuted per record instead of
    // following registry order.
    std::optional<uint64_t> description_order_seed;
    // Single-sequence rendering: output becomes input + "\n" + output and
    // the input field is left empty.
    bool concatenated = false;
};

training_record render(const demonstration & demo, data_format format, const registry & reg,
                       const render_options & options = {});

// Seeded shuffle, then the first train_count demos become the train split
// and the rest the test split; tags are written back on the returned
// copies.
std::pair<std::vector<demonstration>, std::vector<demonstration>>
split_demos(std::vector<demonstration> demos, size_t train_count, uint64_t seed);

// k-shot prompt for querying a pretrained model: k seeded draws without
// replacement from the shot pool (records sharing the query's demo id are
// excluded first), concatenated ahead of the query input.
struct prompt_bundle {
    std::vector<std::pair<std::string, std::string>> shots;
    std::string                                      query_input;
    size_t                                           k = 0;

    std::string render_text() const;
};

prompt_bundle build_prompt(const std::vector<training_record> & shots_pool,
                           const training_record & query, size_t k, uint64_t seed);

nlohmann::ordered_json record_to_json(const training_record & record);
training_record        record_from_json(const nlohmann::json & doc, std::string_view where);

void write_records_jsonl(const std::filesystem::path & path,
                         const std::vector<training_record> & records);
std::vector<training_record> read_records_jsonl(const std::filesystem::path & path);

} // namespace fcgen

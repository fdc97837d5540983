#include "fcgen/formatter.hpp"

#include "fcgen/errors.hpp"
#include "fcgen/jsonl.hpp"
#include "fcgen/rng.hpp"

#include <numeric>

namespace fcgen {

namespace {

constexpr std::string_view kDescriptionsHeader = "Function descriptions:\n";
constexpr std::string_view kQuestionPrefix     = "Question: ";

std::string call_text(const demonstration & demo) {
    return demo.gold_call.render() + std::string(k_end_of_call);
}

} // namespace

std::string_view to_string(data_format f) {
    return f == data_format::df1 ? "df1" : "df2";
}

data_format parse_data_format(std::string_view text) {
    if (text == "df1" || text == "DF1") {
        return data_format::df1;
    }
    if (text == "df2" || text == "DF2") {
        return data_format::df2;
    }
    throw_validation("unknown data format: '" + std::string(text) + "' (expected df1 or df2)");
}

training_record render(const demonstration & demo, data_format format, const registry & reg,
                       const render_options & options) {
    const function_schema * schema = reg.find(demo.function);
    if (schema == nullptr) {
        throw_validation("demonstration '" + demo.id + "' references unregistered function '" +
                         demo.function + "'");
    }

    training_record record;
    record.format   = format;
    record.demo_id  = demo.id;
    record.function = demo.function;

    if (format == data_format::df1) {
        record.input_text  = demo.question;
        record.output_text = call_text(demo) + "\n" + schema->description;
    } else {
        std::vector<size_t> order(reg.size());
        std::iota(order.begin(), order.end(), size_t{0});
        if (options.description_order_seed) {
            seeded_shuffle(order, derive_seed(*options.description_order_seed, demo.id));
        }
        std::string input(kDescriptionsHeader);
        for (size_t i = 0; i < order.size(); ++i) {
            if (i > 0) {
                input += "\n\n";
            }
            input += reg.at(order[i]).description;
        }
        input += "\n\n";
        input += kQuestionPrefix;
        input += demo.question;
        record.input_text  = std::move(input);
        record.output_text = call_text(demo);
    }

    if (options.concatenated) {
        record.output_text = record.input_text + "\n" + record.output_text;
        record.input_text.clear();
    }
    return record;
}

std::pair<std::vector<demonstration>, std::vector<demonstration>>
split_demos(std::vector<demonstration> demos, size_t train_count, uint64_t seed) {
    if (train_count > demos.size()) {
        throw_validation("train count " + std::to_string(train_count) +
                         " exceeds the population of " + std::to_string(demos.size()) +
                         " demonstrations");
    }
    seeded_shuffle(demos, seed);
    std::vector<demonstration> train(demos.begin(), demos.begin() + train_count);
    std::vector<demonstration> test(demos.begin() + train_count, demos.end());
    for (auto & demo : train) {
        demo.split = split_tag::train;
    }
    for (auto & demo : test) {
        demo.split = split_tag::test;
    }
    return {std::move(train), std::move(test)};
}

std::string prompt_bundle::render_text() const {
    std::string out;
    for (const auto & [input, output] : shots) {
        out += input;
        out += '\n';
        out += output;
        out += "\n\n";
    }
    out += query_input;
    out += '\n';
    return out;
}

prompt_bundle build_prompt(const std::vector<training_record> & shots_pool,
                           const training_record & query, size_t k, uint64_t seed) {
    std::vector<const training_record *> eligible;
    eligible.reserve(shots_pool.size());
    for (const auto & record : shots_pool) {
        if (record.demo_id != query.demo_id) {
            eligible.push_back(&record);
        }
    }
    if (eligible.size() < k) {
        throw_validation("shot pool has only " + std::to_string(eligible.size()) +
                         " usable records, cannot draw " + std::to_string(k) + " shots");
    }

    // Partial Fisher-Yates: the first k positions are a uniform draw
    // without replacement.
    rng64 rng(derive_seed(seed, "prompt-shots"));
    for (size_t i = 0; i < k; ++i) {
        const size_t j = i + rng.below(eligible.size() - i);
        std::swap(eligible[i], eligible[j]);
    }

    prompt_bundle bundle;
    bundle.k           = k;
    bundle.query_input = query.input_text;
    bundle.shots.reserve(k);
    for (size_t i = 0; i < k; ++i) {
        bundle.shots.emplace_back(eligible[i]->input_text, eligible[i]->output_text);
    }
    return bundle;
}

nlohmann::ordered_json record_to_json(const training_record & record) {
    return nlohmann::ordered_json{
        {"format", to_string(record.format)},
        {"input", record.input_text},
        {"output", record.output_text},
        {"meta", {{"id", record.demo_id}, {"function", record.function}}},
    };
}

training_record record_from_json(const nlohmann::json & doc, std::string_view where) {
    const std::string context(where);
    for (const char * key : {"format", "input", "output", "meta"}) {
        if (!doc.contains(key)) {
            throw_validation(context + ": training record is missing key '" + std::string(key) +
                             "'");
        }
    }
    training_record record;
    record.format      = parse_data_format(doc.at("format").get<std::string>());
    record.input_text  = doc.at("input").get<std::string>();
    record.output_text = doc.at("output").get<std::string>();
    record.demo_id     = doc.at("meta").value("id", "");
    record.function    = doc.at("meta").value("function", "");
    return record;
}

void write_records_jsonl(const std::filesystem::path & path,
                         const std::vector<training_record> & records) {
    jsonl_writer out(path);
    for (const auto & record : records) {
        out.write(record_to_json(record));
    }
    out.close();
}

std::vector<training_record> read_records_jsonl(const std::filesystem::path & path) {
    std::vector<training_record> records;
    for_each_jsonl(path, [&](size_t line_no, const nlohmann::json & doc) {
        records.push_back(record_from_json(doc, path.string() + ":" + std::to_string(line_no)));
    });
    return records;
}

} // namespace fcgen

#include "fcgen/mixer.hpp"

#include "fcgen/errors.hpp"
#include "fcgen/jsonl.hpp"
#include "fcgen/rng.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace fcgen {

namespace {

bool is_blank(const std::string & text) {
    return std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
}

} // namespace

textbook_corpus ingest_textbook(const std::filesystem::path & path) {
    textbook_corpus corpus;
    for_each_jsonl(path, [&](size_t line_no, const nlohmann::json & doc) {
        if (!doc.contains("text") || !doc.at("text").is_string()) {
            throw_validation(path.string() + ":" + std::to_string(line_no) +
                             ": textbook record has no 'text' string field");
        }
        std::string text = doc.at("text").get<std::string>();
        if (is_blank(text)) {
            ++corpus.dropped;
            return;
        }
        corpus.blocks.push_back(std::move(text));
    });
    return corpus;
}

std::vector<mixed_record> mix(std::vector<training_record> fc,
                              const std::vector<std::string> & textbook, const mix_spec & spec) {
    if (spec.fc_parts == 0 && spec.textbook_parts == 0) {
        throw_validation("mix ratio must not be 0:0");
    }
    if (spec.fc_parts == 0) {
        throw_validation("the function-call side of the mix ratio must be positive");
    }

    // round(|fc| * textbook_parts / fc_parts), half up, in exact integer
    // arithmetic.
    const uint64_t numerator = static_cast<uint64_t>(fc.size()) * spec.textbook_parts;
    const uint64_t textbook_count =
        numerator / spec.fc_parts + ((numerator % spec.fc_parts) * 2 >= spec.fc_parts ? 1 : 0);

    if (textbook_count > textbook.size()) {
        throw_validation("textbook pool has " + std::to_string(textbook.size()) +
                         " blocks but the ratio requires " + std::to_string(textbook_count));
    }

    std::vector<size_t> chosen(textbook_count);
    if (spec.sampling == mix_spec::sampling_mode::head) {
        std::iota(chosen.begin(), chosen.end(), size_t{0});
    } else {
        std::vector<size_t> indices(textbook.size());
        std::iota(indices.begin(), indices.end(), size_t{0});
        rng64 rng(derive_seed(spec.seed, "textbook-sample"));
        for (size_t i = 0; i < textbook_count; ++i) {
            const size_t j = i + rng.below(indices.size() - i);
            std::swap(indices[i], indices[j]);
            chosen[i] = indices[i];
        }
    }

    std::vector<mixed_record> mixed;
    mixed.reserve(fc.size() + textbook_count);
    for (auto & record : fc) {
        mixed_record m;
        m.kind = mixed_record::record_kind::function_call;
        m.fc   = std::move(record);
        mixed.push_back(std::move(m));
    }
    for (const size_t index : chosen) {
        mixed_record m;
        m.kind = mixed_record::record_kind::textbook;
        m.text = textbook[index];
        mixed.push_back(std::move(m));
    }

    seeded_shuffle(mixed, derive_seed(spec.seed, "mix-shuffle"));
    return mixed;
}

void write_mixed_jsonl(const std::filesystem::path & path,
                       const std::vector<mixed_record> & records) {
    jsonl_writer out(path);
    for (const auto & record : records) {
        if (record.kind == mixed_record::record_kind::function_call) {
            const nlohmann::ordered_json fields = record_to_json(record.fc);
            nlohmann::ordered_json doc{{"kind", "function-call"}};
            for (const auto & [key, value] : fields.items()) {
                doc[key] = value;
            }
            out.write(doc);
        } else {
            out.write(nlohmann::ordered_json{{"kind", "textbook"}, {"text", record.text}});
        }
    }
    out.close();
}

std::vector<mixed_record> read_mixed_jsonl(const std::filesystem::path & path) {
    std::vector<mixed_record> records;
    for_each_jsonl(path, [&](size_t line_no, const nlohmann::json & doc) {
        const std::string where = path.string() + ":" + std::to_string(line_no);
        const std::string kind  = doc.value("kind", "");
        mixed_record m;
        if (kind == "function-call") {
            m.kind = mixed_record::record_kind::function_call;
            m.fc   = record_from_json(doc, where);
        } else if (kind == "textbook") {
            m.kind = mixed_record::record_kind::textbook;
            if (!doc.contains("text")) {
                throw_validation(where + ": textbook record is missing 'text'");
            }
            m.text = doc.at("text").get<std::string>();
        } else {
            throw_validation(where + ": unknown mixed record kind '" + kind + "'");
        }
        records.push_back(std::move(m));
    });
    return records;
}

} // namespace fcgen

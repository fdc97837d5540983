// fcgen: synthesizes function-call fine-tuning datasets from phrase pools,
// formats them, mixes in a textbook corpus, and grades predictions.

#include "fcgen/baseline.hpp"
#include "fcgen/errors.hpp"
#include "fcgen/evaluator.hpp"
#include "fcgen/formatter.hpp"
#include "fcgen/generator.hpp"
#include "fcgen/jsonl.hpp"
#include "fcgen/mixer.hpp"
#include "fcgen/oracle.hpp"
#include "fcgen/rng.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <set>

namespace fs = std::filesystem;
using namespace fcgen;

namespace {

struct pools_index {
    registry reg;
    std::vector<std::unique_ptr<bound_pools>> owned;
    std::vector<const bound_pools *>          views;

    const bound_pools & for_function(const std::string & name) const {
        for (const auto * pools : views) {
            if (pools->pools().function == name) {
                return *pools;
            }
        }
        throw_validation("no pools loaded for function '" + name + "'");
    }
};

pools_index load_pools_index(const std::string & registry_path, const std::string & pools_dir) {
    pools_index index;
    index.reg = registry::load_file(registry_path);
    for (const auto & schema : index.reg) {
        auto path = fs::path(pools_dir) / (schema.name + ".toml");
        index.owned.push_back(std::make_unique<bound_pools>(load_pools_file(path), schema));
        index.views.push_back(index.owned.back().get());
    }
    return index;
}

std::pair<uint32_t, uint32_t> parse_ratio(const std::string & text, const char * what) {
    const size_t colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size()) {
        throw_validation(std::string(what) + " must look like A:B, got '" + text + "'");
    }
    try {
        const unsigned long a = std::stoul(text.substr(0, colon));
        const unsigned long b = std::stoul(text.substr(colon + 1));
        return {static_cast<uint32_t>(a), static_cast<uint32_t>(b)};
    } catch (const std::exception &) {
        throw_validation(std::string(what) + " must be a pair of integers, got '" + text + "'");
    }
}

void echo_config(const nlohmann::ordered_json & effective) {
    std::cout << "config: " << effective.dump() << "\n";
}

void ensure_parent_dir(const fs::path & file) {
    if (file.has_parent_path()) {
        fs::create_directories(file.parent_path());
    }
}

std::vector<demonstration> filter_split(std::vector<demonstration> demos,
                                        const std::string & which) {
    if (which == "all") {
        return demos;
    }
    const split_tag wanted = parse_split_tag(which);
    std::vector<demonstration> kept;
    for (auto & demo : demos) {
        if (demo.split == wanted) {
            kept.push_back(std::move(demo));
        }
    }
    return kept;
}

// Options shared by every subcommand; registered once on the main app and
// reached from subcommand argument lists through fallthrough.
struct common_opts {
    std::string registry_path = "data/functions.toml";
    std::string pools_dir     = "data/pools";
    uint64_t    seed          = 0;
};

// ---------------------------------------------------------------- generate

int run_generate(const common_opts & common, uint64_t count, const std::string & style_ratio_text,
                 const std::string & out_dir) {
    if (count == 0) {
        throw_validation("--count must be positive");
    }
    const pools_index index = load_pools_index(common.registry_path, common.pools_dir);

    echo_config({{"command", "generate"},
                 {"registry", common.registry_path},
                 {"pools_dir", common.pools_dir},
                 {"seed", common.seed},
                 {"count", count},
                 {"style_ratio", style_ratio_text.empty() ? "natural" : style_ratio_text},
                 {"out", out_dir}});

    fs::create_directories(out_dir);
    nlohmann::ordered_json stats = nlohmann::ordered_json::array();
    std::vector<demonstration> all;

    for (const auto * pools : index.views) {
        const std::string & name = pools->pools().function;
        const uint64_t      seed = derive_seed(common.seed, "generate/" + name);

        std::vector<demonstration> demos;
        if (style_ratio_text.empty()) {
            demos = generate(*pools, count, seed);
        } else {
            const auto [req, cmd] = parse_ratio(style_ratio_text, "--style-ratio");
            demos = generate_styled(*pools, count, {req, cmd}, seed);
        }

        std::set<std::string> questions;
        size_t                commands = 0;
        for (const auto & demo : demos) {
            questions.insert(demo.question);
            commands += demo.style == demo_style::command ? 1 : 0;
        }
        if (questions.size() != demos.size()) {
            throw_validation("internal dedup failure for '" + name + "'");
        }

        write_demos_jsonl(fs::path(out_dir) / (name + ".jsonl"), demos);
        stats.push_back({{"function", name},
                         {"capacity", pools->capacity()},
                         {"generated", demos.size()},
                         {"unique_questions", questions.size()},
                         {"request_style", demos.size() - commands},
                         {"command_style", commands}});
        std::cout << name << ": " << demos.size() << " demos (capacity " << pools->capacity()
                  << ", " << commands << " command-style)\n";
        all.insert(all.end(), std::make_move_iterator(demos.begin()),
                   std::make_move_iterator(demos.end()));
    }

    write_demos_jsonl(fs::path(out_dir) / "all.jsonl", all);
    write_text_file(fs::path(out_dir) / "stats.json", stats.dump(2) + "\n");
    std::cout << "wrote " << all.size() << " demonstrations to " << out_dir << "\n";
    return 0;
}

// -------------------------------------------------------------------- oofc

int run_oofc(const common_opts & common, const std::string & demos_path,
             const std::string & out_path) {
    const pools_index index = load_pools_index(common.registry_path, common.pools_dir);
    const auto        demos = read_demos_jsonl(demos_path);

    echo_config({{"command", "oofc"},
                 {"demos", demos_path},
                 {"seed", common.seed},
                 {"out", out_path}});

    // Group per function, transform, then reassemble in input order.
    std::map<std::string, std::vector<size_t>> positions;
    for (size_t i = 0; i < demos.size(); ++i) {
        positions[demos[i].function].push_back(i);
    }
    std::vector<demonstration> variants(demos.size());
    for (const auto & [function, where] : positions) {
        const bound_pools & pools = index.for_function(function);
        std::vector<demonstration> group;
        group.reserve(where.size());
        for (const size_t i : where) {
            group.push_back(demos[i]);
        }
        auto transformed = make_oofc(group, pools, derive_seed(common.seed, "oofc/" + function));
        for (size_t g = 0; g < where.size(); ++g) {
            variants[where[g]] = std::move(transformed[g]);
        }
    }

    ensure_parent_dir(out_path);
    write_demos_jsonl(out_path, variants);
    std::cout << "wrote " << variants.size() << " out-of-logic variants to " << out_path << "\n";
    return 0;
}

// ------------------------------------------------------------------- split

int run_split(const common_opts & common, const std::string & demos_path, uint64_t train_count,
              const std::string & out_path) {
    const auto demos = read_demos_jsonl(demos_path);

    echo_config({{"command", "split"},
                 {"demos", demos_path},
                 {"train_count", train_count},
                 {"seed", common.seed},
                 {"out", out_path}});

    // The train budget applies per function.
    std::vector<std::string>                          order;
    std::map<std::string, std::vector<demonstration>> groups;
    for (const auto & demo : demos) {
        if (!groups.contains(demo.function)) {
            order.push_back(demo.function);
        }
        groups[demo.function].push_back(demo);
    }

    std::vector<demonstration> tagged;
    tagged.reserve(demos.size());
    for (const auto & function : order) {
        auto [train, test] = split_demos(std::move(groups[function]), train_count,
                                         derive_seed(common.seed, "split/" + function));
        std::cout << function << ": " << train.size() << " train / " << test.size() << " test\n";
        tagged.insert(tagged.end(), std::make_move_iterator(train.begin()),
                      std::make_move_iterator(train.end()));
        tagged.insert(tagged.end(), std::make_move_iterator(test.begin()),
                      std::make_move_iterator(test.end()));
    }

    ensure_parent_dir(out_path);
    write_demos_jsonl(out_path, tagged);
    return 0;
}

// ------------------------------------------------------------------ format

int run_format(const common_opts & common, const std::string & demos_path,
               const std::string & format_text, const std::string & split_filter,
               bool concatenated, int64_t order_seed, const std::string & out_path) {
    const registry reg    = registry::load_file(common.registry_path);
    const auto     demos  = filter_split(read_demos_jsonl(demos_path), split_filter);
    const auto     format = parse_data_format(format_text);

    echo_config({{"command", "format"},
                 {"demos", demos_path},
                 {"format", format_text},
                 {"split", split_filter},
                 {"concat", concatenated},
                 {"order_seed", order_seed},
                 {"out", out_path}});

    render_options options;
    options.concatenated = concatenated;
    if (order_seed >= 0) {
        options.description_order_seed = static_cast<uint64_t>(order_seed);
    }

    std::vector<training_record> records;
    records.reserve(demos.size());
    for (const auto & demo : demos) {
        records.push_back(render(demo, format, reg, options));
    }

    ensure_parent_dir(out_path);
    write_records_jsonl(out_path, records);
    std::cout << "wrote " << records.size() << " " << format_text << " records to " << out_path
              << "\n";
    return 0;
}

// --------------------------------------------------------------------- mix

int run_mix(const common_opts & common, const std::string & records_path,
            const std::string & textbook_path, const std::string & ratio_text,
            const std::string & sampling_text, const std::string & out_path) {
    const auto records = read_records_jsonl(records_path);
    const auto corpus  = ingest_textbook(textbook_path);

    echo_config({{"command", "mix"},
                 {"records", records_path},
                 {"textbook", textbook_path},
                 {"ratio", ratio_text},
                 {"sampling", sampling_text},
                 {"seed", common.seed},
                 {"out", out_path}});

    mix_spec spec;
    const auto [fc_parts, tb_parts] = parse_ratio(ratio_text, "--ratio");
    spec.fc_parts       = fc_parts;
    spec.textbook_parts = tb_parts;
    spec.seed           = common.seed;
    if (sampling_text == "head") {
        spec.sampling = mix_spec::sampling_mode::head;
    } else if (sampling_text == "uniform") {
        spec.sampling = mix_spec::sampling_mode::seeded_uniform;
    } else {
        throw_validation("--sampling must be 'head' or 'uniform'");
    }

    const auto mixed = mix(records, corpus.blocks, spec);
    ensure_parent_dir(out_path);
    write_mixed_jsonl(out_path, mixed);
    std::cout << "wrote " << mixed.size() << " mixed records (" << records.size()
              << " function-call, " << mixed.size() - records.size() << " textbook, "
              << corpus.dropped << " blank blocks dropped) to " << out_path << "\n";
    return 0;
}

// ------------------------------------------------------------------ prompt

int run_prompt(const common_opts & common, const std::string & shots_path,
               const std::string & demos_path, const std::string & format_text, uint64_t k,
               uint64_t limit, const std::string & split_filter, const std::string & out_dir) {
    const registry reg   = registry::load_file(common.registry_path);
    const auto     shots = read_records_jsonl(shots_path);
    auto           demos = filter_split(read_demos_jsonl(demos_path), split_filter);
    const auto     format = parse_data_format(format_text);

    echo_config({{"command", "prompt"},
                 {"shots", shots_path},
                 {"demos", demos_path},
                 {"format", format_text},
                 {"k", k},
                 {"limit", limit},
                 {"split", split_filter},
                 {"seed", common.seed},
                 {"out", out_dir}});

    if (limit > 0 && demos.size() > limit) {
        demos.resize(limit);
    }
    fs::create_directories(out_dir);
    for (const auto & demo : demos) {
        const training_record query = render(demo, format, reg);
        const prompt_bundle bundle =
            build_prompt(shots, query, k, derive_seed(common.seed, "prompt/" + demo.id));
        write_text_file(fs::path(out_dir) / (demo.id + ".txt"), bundle.render_text());
    }
    std::cout << "wrote " << demos.size() << " prompt files to " << out_dir << "\n";
    return 0;
}

// ------------------------------------------------------------------ oracle

int run_oracle(const common_opts & common, const std::string & demos_path,
               const std::string & out_path) {
    const pools_index index = load_pools_index(common.registry_path, common.pools_dir);
    const auto        demos = read_demos_jsonl(demos_path);
    const oracle_router oracle(index.views);

    echo_config({{"command", "oracle"},
                 {"demos", demos_path},
                 {"seed", common.seed},
                 {"out", out_path}});

    std::vector<prediction> preds;
    preds.reserve(demos.size());
    for (const auto & demo : demos) {
        preds.push_back({demo.id, oracle.route(demo.question).render()});
    }
    ensure_parent_dir(out_path);
    write_predictions_jsonl(out_path, preds);
    std::cout << "wrote " << preds.size() << " oracle predictions to " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------- evaluate

int run_evaluate(const common_opts & common, const std::string & demos_path,
                 const std::string & preds_path, const std::string & scores_path,
                 bool include_train, const std::string & out_path) {
    const registry reg   = registry::load_file(common.registry_path);
    auto           demos = read_demos_jsonl(demos_path);
    const auto     preds = read_predictions_jsonl(preds_path);

    echo_config({{"command", "evaluate"},
                 {"demos", demos_path},
                 {"predictions", preds_path},
                 {"scores", scores_path},
                 {"include_train", include_train},
                 {"seed", common.seed},
                 {"out", out_path}});

    if (!include_train) {
        std::erase_if(demos, [](const demonstration & d) { return d.split == split_tag::train; });
    }
    // Tolerate prediction files covering more than the graded subset.
    std::set<std::string> graded_ids;
    for (const auto & demo : demos) {
        graded_ids.insert(demo.id);
    }
    std::vector<prediction> usable;
    for (const auto & pred : preds) {
        if (graded_ids.contains(pred.demo_id)) {
            usable.push_back(pred);
        }
    }

    eval_report report = grade(usable, demos, reg);
    if (!scores_path.empty()) {
        report.attach_scores(benchmark_scores::load_file(scores_path));
    }

    std::cout << report.to_table();
    if (!out_path.empty()) {
        ensure_parent_dir(out_path);
        write_text_file(out_path, report.to_json().dump(2) + "\n");
        std::cout << "report written to " << out_path << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- baseline

int run_baseline(const common_opts & common, const std::string & demos_path,
                 const std::string & function, const std::string & fixtures_path, bool live,
                 const std::string & record_path, uint64_t limit, const std::string & base_url,
                 const std::string & model, const std::string & out_dir) {
    const pools_index index = load_pools_index(common.registry_path, common.pools_dir);
    const auto        demos = read_demos_jsonl(demos_path);
    const function_schema & schema = index.reg.require(function);
    const oracle_router     oracle(index.views);

    echo_config({{"command", "baseline"},
                 {"demos", demos_path},
                 {"function", function},
                 {"fixtures", fixtures_path},
                 {"live", live},
                 {"limit", limit},
                 {"seed", common.seed},
                 {"out_dir", out_dir}});

    endpoint_config cfg;
    if (!base_url.empty()) {
        cfg.base_url = base_url;
    }
    if (!model.empty()) {
        cfg.model_name = model;
    }

    std::unique_ptr<transport> tx;
    if (live) {
        tx = std::make_unique<http_transport>(cfg);
    } else {
        if (fixtures_path.empty()) {
            throw_validation("either --live or --fixtures FILE is required");
        }
        tx = std::make_unique<fixture_transport>(fixture_transport::load_file(fixtures_path));
    }
    std::unique_ptr<recording_transport> recorder;
    transport * active = tx.get();
    if (!record_path.empty()) {
        ensure_parent_dir(record_path);
        recorder = std::make_unique<recording_transport>(*tx, record_path);
        active   = recorder.get();
    }

    // Mixed, shuffled question pool across all functions, as the
    // generation baseline prescribes.
    std::vector<std::string> questions;
    questions.reserve(demos.size());
    for (const auto & demo : demos) {
        questions.push_back(demo.question);
    }
    seeded_shuffle(questions, derive_seed(common.seed, "baseline/shuffle"));
    if (limit > 0 && questions.size() > limit) {
        questions.resize(limit);
    }

    const auto kept = filter_queries(questions, schema, cfg, *active);
    std::cout << "filter kept " << kept.size() << " of " << questions.size() << " questions\n";

    const baseline_report report =
        generate_outputs(kept, schema, cfg, *active, oracle, index.reg);

    fs::create_directories(out_dir);
    {
        jsonl_writer out(fs::path(out_dir) / ("baseline_" + function + "_records.jsonl"));
        for (const auto & record : report.records) {
            out.write({{"question", record.question},
                       {"function", record.function},
                       {"generated_output", record.generated_output},
                       {"matched", record.verdict.matched},
                       {"reason", to_string(record.verdict.reason)}});
        }
        out.close();
    }
    {
        // DF1-style records built from the raw generations, description
        // appended after the output.
        std::vector<training_record> df1;
        for (size_t i = 0; i < report.records.size(); ++i) {
            training_record r;
            r.format      = data_format::df1;
            r.input_text  = report.records[i].question;
            r.output_text = report.records[i].generated_output + "\n" + schema.description;
            r.demo_id     = "baseline-" + function + "-" + std::to_string(i);
            r.function    = function;
            df1.push_back(std::move(r));
        }
        write_records_jsonl(fs::path(out_dir) / ("baseline_" + function + "_df1.jsonl"), df1);
    }
    const nlohmann::ordered_json summary{
        {"function", function},
        {"questions_offered", questions.size()},
        {"questions_kept", kept.size()},
        {"generated", report.records.size()},
        {"correct", report.correct},
        {"correct_fraction", report.correct_fraction},
    };
    write_text_file(fs::path(out_dir) / ("baseline_" + function + "_report.json"),
                    summary.dump(2) + "\n");
    std::cout << "generation quality: " << report.correct << "/" << report.records.size()
              << " correct (" << report.correct_fraction << ")\n";
    return 0;
}

} // namespace

int main(int argc, char ** argv) {
    CLI::App app{"function-call dataset generator and evaluation harness"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file with defaults for any option (flags win)");
    app.fallthrough();

    common_opts common;
    app.add_option("--registry", common.registry_path, "Function schema file")
        ->capture_default_str();
    app.add_option("--pools-dir", common.pools_dir, "Directory of per-function phrase pools")
        ->capture_default_str();
    app.add_option("--seed", common.seed, "Deterministic seed")->capture_default_str();

    auto * cmd_generate = app.add_subcommand("generate", "Generate demonstrations per function");
    uint64_t    count = 1000;
    std::string style_ratio_text;
    std::string generate_out = "out/demos";
    cmd_generate->add_option("--count", count, "Demonstrations per function")
        ->capture_default_str();
    cmd_generate->add_option("--style-ratio", style_ratio_text,
                             "Force a request:command ratio, e.g. 4:1");
    cmd_generate->add_option("--out", generate_out, "Output directory")->capture_default_str();

    auto * cmd_oofc = app.add_subcommand("oofc", "Out-of-logic variants of a demos file");
    std::string oofc_demos, oofc_out = "out/oofc.jsonl";
    cmd_oofc->add_option("--demos", oofc_demos, "Demonstrations file")->required();
    cmd_oofc->add_option("--out", oofc_out, "Output file")->capture_default_str();

    auto * cmd_split = app.add_subcommand("split", "Assign train/test tags per function");
    std::string split_demos_path, split_out = "out/split.jsonl";
    uint64_t    train_count = 200;
    cmd_split->add_option("--demos", split_demos_path, "Demonstrations file")->required();
    cmd_split->add_option("--train-count", train_count, "Train demos per function")
        ->capture_default_str();
    cmd_split->add_option("--out", split_out, "Output file")->capture_default_str();

    auto * cmd_format = app.add_subcommand("format", "Render demonstrations as training records");
    std::string format_demos, format_text = "df2", format_split = "all";
    std::string format_out = "out/records.jsonl";
    bool        concatenated = false;
    int64_t     order_seed   = -1;
    cmd_format->add_option("--demos", format_demos, "Demonstrations file")->required();
    cmd_format->add_option("--format", format_text, "df1 or df2")->capture_default_str();
    cmd_format->add_option("--split", format_split, "train, test, unassigned, or all")
        ->capture_default_str();
    cmd_format->add_flag("--concat", concatenated, "Single-sequence rendering");
    cmd_format->add_option("--order-seed", order_seed,
                           "Permute df2 description order per record with this seed");
    cmd_format->add_option("--out", format_out, "Output file")->capture_default_str();

    auto * cmd_mix = app.add_subcommand("mix", "Mix records with a textbook corpus");
    std::string mix_records, mix_textbook, mix_ratio = "1:1", mix_sampling = "uniform";
    std::string mix_out = "out/mixed.jsonl";
    cmd_mix->add_option("--records", mix_records, "Training records file")->required();
    cmd_mix->add_option("--textbook", mix_textbook, "Textbook JSONL with a text field")
        ->required();
    cmd_mix->add_option("--ratio", mix_ratio, "fc:textbook record ratio")->capture_default_str();
    cmd_mix->add_option("--sampling", mix_sampling, "head or uniform")->capture_default_str();
    cmd_mix->add_option("--out", mix_out, "Output file")->capture_default_str();

    auto * cmd_prompt = app.add_subcommand("prompt", "k-shot prompt files for pretrained models");
    std::string prompt_shots, prompt_demos, prompt_format = "df1", prompt_split = "all";
    std::string prompt_out = "out/prompts";
    uint64_t    shots_k = 10, prompt_limit = 0;
    cmd_prompt->add_option("--shots", prompt_shots, "Training records to draw shots from")
        ->required();
    cmd_prompt->add_option("--demos", prompt_demos, "Query demonstrations file")->required();
    cmd_prompt->add_option("--format", prompt_format, "df1 or df2")->capture_default_str();
    cmd_prompt->add_option("--k", shots_k, "Shots per prompt")->capture_default_str();
    cmd_prompt->add_option("--limit", prompt_limit, "Cap the number of prompts (0 = all)")
        ->capture_default_str();
    cmd_prompt->add_option("--split", prompt_split, "Filter queries by split tag")
        ->capture_default_str();
    cmd_prompt->add_option("--out", prompt_out, "Output directory")->capture_default_str();

    auto * cmd_oracle = app.add_subcommand("oracle", "Route questions back to gold calls");
    std::string oracle_demos, oracle_out = "out/oracle_preds.jsonl";
    cmd_oracle->add_option("--demos", oracle_demos, "Demonstrations file")->required();
    cmd_oracle->add_option("--out", oracle_out, "Predictions output file")
        ->capture_default_str();

    auto * cmd_evaluate = app.add_subcommand("evaluate", "Grade predictions against gold demos");
    std::string eval_demos, eval_preds, eval_scores, eval_out = "out/report.json";
    bool        include_train = false;
    cmd_evaluate->add_option("--demos", eval_demos, "Gold demonstrations file")->required();
    cmd_evaluate->add_option("--preds", eval_preds, "Predictions file")->required();
    cmd_evaluate->add_option("--scores", eval_scores,
                             "Benchmark scores config for the aggregate metric");
    cmd_evaluate->add_flag("--include-train", include_train, "Grade train-split demos too");
    cmd_evaluate->add_option("--out", eval_out, "Report JSON output ('' to skip)")
        ->capture_default_str();

    auto * cmd_baseline = app.add_subcommand(
        "baseline", "LLM-generated dataset baseline over a chat-completion endpoint");
    std::string baseline_demos, baseline_function, baseline_fixtures, baseline_record;
    std::string baseline_url, baseline_model, baseline_out = "out/baseline";
    bool        baseline_live  = false;
    uint64_t    baseline_limit = 0;
    cmd_baseline->add_option("--demos", baseline_demos, "Question source demonstrations file")
        ->required();
    cmd_baseline->add_option("--function", baseline_function, "Target function name")
        ->required();
    cmd_baseline->add_option("--fixtures", baseline_fixtures,
                             "Recorded request/response fixture file");
    cmd_baseline->add_flag("--live", baseline_live, "Use the live HTTP endpoint");
    cmd_baseline->add_option("--record", baseline_record,
                             "Record the session to this fixture file");
    cmd_baseline->add_option("--limit", baseline_limit, "Cap the question pool (0 = all)")
        ->capture_default_str();
    cmd_baseline->add_option("--base-url", baseline_url, "Endpoint base URL");
    cmd_baseline->add_option("--model", baseline_model, "Model name sent in requests");
    cmd_baseline->add_option("--out-dir", baseline_out, "Output directory")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
        if (cmd_generate->parsed()) {
            return run_generate(common, count, style_ratio_text, generate_out);
        }
        if (cmd_oofc->parsed()) {
            return run_oofc(common, oofc_demos, oofc_out);
        }
        if (cmd_split->parsed()) {
            return run_split(common, split_demos_path, train_count, split_out);
        }
        if (cmd_format->parsed()) {
            return run_format(common, format_demos, format_text, format_split, concatenated,
                              order_seed, format_out);
        }
        if (cmd_mix->parsed()) {
            return run_mix(common, mix_records, mix_textbook, mix_ratio, mix_sampling, mix_out);
        }
        if (cmd_prompt->parsed()) {
            return run_prompt(common, prompt_shots, prompt_demos, prompt_format, shots_k,
                              prompt_limit, prompt_split, prompt_out);
        }
        if (cmd_oracle->parsed()) {
            return run_oracle(common, oracle_demos, oracle_out);
        }
        if (cmd_evaluate->parsed()) {
            return run_evaluate(common, eval_demos, eval_preds, eval_scores, include_train,
                                eval_out);
        }
        if (cmd_baseline->parsed()) {
            return run_baseline(common, baseline_demos, baseline_function, baseline_fixtures,
                                baseline_live, baseline_record, baseline_limit, baseline_url,
                                baseline_model, baseline_out);
        }
        return 0;
    } catch (const CLI::ParseError & e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const error & e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case error_kind::validation:
            case error_kind::parse:     return 1;
            case error_kind::io:        return 2;
            case error_kind::transport: return 3;
        }
        return 1;
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#include "fcgen/formatter.hpp"

#include "fcgen/errors.hpp"
#include "fcgen/generator.hpp"
#include "fcgen/jsonl.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace fcgen;

namespace {

registry two_function_registry() {
    return registry::from_config(cfg::parse_string(R"(
[[function]]
name = "alpha"
description = """
Function: alpha
Does the first thing."""

[[function.params]]
name = "mode"
kind = "enum"
allowed = ["fast", "slow"]
default = "fast"

[[function]]
name = "beta"
description = """
Function: beta
Does the second thing."""
)"), "inline");
}

demonstration sample_demo() {
    demonstration demo;
    demo.id       = "alpha-000000";
    demo.function = "alpha";
    demo.style    = demo_style::request;
    demo.question = "Can I do the first thing quickly";
    demo.gold_call.token_index = 0;
    demo.gold_call.callee_name = "alpha";
    demo.gold_call.args        = {{"mode", "fast"}};
    return demo;
}

} // namespace

TEST_CASE("df1 and df2 layouts match the golden fixtures byte for byte") {
    const registry reg  = two_function_registry();
    const auto     demo = sample_demo();

    const training_record df1 = render(demo, data_format::df1, reg);
    const training_record df2 = render(demo, data_format::df2, reg);

    CHECK(record_to_json(df1).dump() + "\n" ==
          read_text_file(test::golden_dir() / "df1_record.jsonl"));
    CHECK(record_to_json(df2).dump() + "\n" ==
          read_text_file(test::golden_dir() / "df2_record.jsonl"));
}

TEST_CASE("df2 input holds every description and the question; output only the call") {
    const registry reg = test::load_default_registry();
    const bound_pools pools(test::load_pools("take_a_photo"), reg.require("take_a_photo"));
    const auto demos = generate(pools, 25, 3);

    for (const auto & demo : demos) {
        const training_record record = render(demo, data_format::df2, reg);
        for (const auto & schema : reg) {
            CHECK(record.input_text.find(schema.description) != std::string::npos);
        }
        CHECK(record.input_text.find("Question: " + demo.question) != std::string::npos);
        CHECK(record.output_text == demo.gold_call.render() + std::string(k_end_of_call));
        // leakage property: no description text in the target
        for (const auto & schema : reg) {
            CHECK(record.output_text.find(schema.description) == std::string::npos);
        }
    }
}

TEST_CASE("df1 output ends with the triggered function's description") {
    const registry reg = test::load_default_registry();
    const bound_pools pools(test::load_pools("set_timer"), reg.require("set_timer"));
    for (const auto & demo : generate(pools, 10, 4)) {
        const training_record record = render(demo, data_format::df1, reg);
        CHECK(record.input_text == demo.question);
        CHECK(record.output_text.ends_with(reg.require("set_timer").description));
        CHECK(record.output_text.starts_with(demo.gold_call.render() +
                                             std::string(k_end_of_call) + "\n"));
    }
}

TEST_CASE("single-function registry means a single description block") {
    const registry reg = registry::from_config(cfg::parse_string(R"(
[[function]]
name = "alpha"
description = "Function: alpha. Only one."
)"), "inline");

    demonstration demo = sample_demo();
    demo.gold_call.args.clear();
    const training_record record = render(demo, data_format::df2, reg);
    CHECK(record.input_text ==
          "Function descriptions:\nFunction: alpha. Only one.\n\nQuestion: " + demo.question);
}

TEST_CASE("description order can be permuted per record") {
    const registry reg  = test::load_default_registry();
    const auto     demo = [] {
        demonstration d = sample_demo();
        d.function      = "take_a_photo";
        d.gold_call.args = {};
        return d;
    }();

    render_options opts;
    opts.description_order_seed = 9;
    const training_record shuffled = render(demo, data_format::df2, reg, opts);
    const training_record plain    = render(demo, data_format::df2, reg);
    CHECK(shuffled.input_text != plain.input_text);
    // same blocks, different order
    for (const auto & schema : reg) {
        CHECK(shuffled.input_text.find(schema.description) != std::string::npos);
    }
    // deterministic per (seed, record)
    CHECK(render(demo, data_format::df2, reg, opts).input_text == shuffled.input_text);
}

TEST_CASE("concatenated rendering folds input into the target sequence") {
    const registry reg  = two_function_registry();
    const auto     demo = sample_demo();
    render_options opts;
    opts.concatenated = true;

    const training_record record = render(demo, data_format::df1, reg, opts);
    CHECK(record.input_text.empty());
    CHECK(record.output_text.starts_with(demo.question + "\n<fn_0>(mode=\"fast\")<eoc>"));
}

TEST_CASE("rendered records parse back to the gold call") {
    const registry reg = test::load_default_registry();
    const bound_pools pools(test::load_pools("send_email"), reg.require("send_email"));
    for (const auto & demo : generate(pools, 40, 5)) {
        for (const data_format format : {data_format::df1, data_format::df2}) {
            const training_record record = render(demo, format, reg);
            const auto parsed = parse_call(extract_call_region(record.output_text));
            REQUIRE(parsed.ok());
            CHECK(*parsed.call == demo.gold_call);
        }
    }
}

TEST_CASE("unknown function is rejected") {
    const registry reg  = two_function_registry();
    demonstration  demo = sample_demo();
    demo.function       = "gamma";
    CHECK_THROWS_AS(render(demo, data_format::df1, reg), error);
}

TEST_CASE("split partitions exactly and deterministically") {
    const registry reg = test::load_default_registry();
    const bound_pools pools(test::load_pools("take_a_photo"), reg.require("take_a_photo"));
    auto demos = generate(pools, 1000, 11);

    auto [train, test_part] = split_demos(demos, 200, 77);
    CHECK(train.size() == 200);
    CHECK(test_part.size() == 800);
    for (const auto & demo : train) {
        CHECK(demo.split == split_tag::train);
    }
    for (const auto & demo : test_part) {
        CHECK(demo.split == split_tag::test);
    }

    // disjoint and exhaustive
    std::set<std::string> ids;
    for (const auto & demo : train) {
        ids.insert(demo.id);
    }
    for (const auto & demo : test_part) {
        ids.insert(demo.id);
    }
    CHECK(ids.size() == 1000);

    // identical partition under the same seed
    auto [train2, test2] = split_demos(demos, 200, 77);
    for (size_t i = 0; i < train.size(); ++i) {
        CHECK(train[i].id == train2[i].id);
    }

    auto [none, all] = split_demos(demos, 0, 77);
    CHECK(none.empty());
    CHECK(all.size() == 1000);

    CHECK_THROWS_AS(split_demos(demos, 1001, 77), error);
}

TEST_CASE("prompt bundles draw k distinct shots and exclude the query") {
    const registry reg = test::load_default_registry();
    const bound_pools pools(test::load_pools("play_music"), reg.require("play_music"));
    const auto demos = generate(pools, 60, 21);

    std::vector<training_record> records;
    for (const auto & demo : demos) {
        records.push_back(render(demo, data_format::df1, reg));
    }
    const training_record query = records.front();

    const prompt_bundle bundle = build_prompt(records, query, 10, 5);
    CHECK(bundle.k == 10);
    REQUIRE(bundle.shots.size() == 10);
    std::set<std::string> shot_inputs;
    for (const auto & [input, output] : bundle.shots) {
        CHECK(input != query.input_text);
        shot_inputs.insert(input);
    }
    CHECK(shot_inputs.size() == 10);

    const prompt_bundle zero = build_prompt(records, query, 0, 5);
    CHECK(zero.shots.empty());
    CHECK(zero.render_text() == query.input_text + "\n");

    CHECK_THROWS_AS(build_prompt(records, query, records.size(), 5), error); // query excluded
    CHECK(build_prompt(records, query, 5, 9).render_text() ==
          build_prompt(records, query, 5, 9).render_text());
}

TEST_CASE("records round-trip through jsonl") {
    const registry reg   = two_function_registry();
    const auto     demo  = sample_demo();
    const auto     dir   = test::fresh_temp_dir("records");
    const auto     path  = dir / "records.jsonl";

    std::vector<training_record> records{render(demo, data_format::df1, reg),
                                         render(demo, data_format::df2, reg)};
    write_records_jsonl(path, records);
    const auto reread = read_records_jsonl(path);
    REQUIRE(reread.size() == 2);
    CHECK(reread[0].format == data_format::df1);
    CHECK(reread[0].input_text == records[0].input_text);
    CHECK(reread[0].output_text == records[0].output_text);
    CHECK(reread[1].demo_id == demo.id);
    std::filesystem::remove_all(dir);
}

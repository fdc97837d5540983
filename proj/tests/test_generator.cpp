#include "fcgen/generator.hpp"

#include "fcgen/errors.hpp"
#include "fcgen/rng.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace fcgen;

namespace {

const demonstration * find_by_question(const std::vector<demonstration> & demos,
                                       std::string_view question) {
    for (const auto & demo : demos) {
        if (demo.question == question) {
            return &demo;
        }
    }
    return nullptr;
}

} // namespace

TEST_CASE("take_a_photo capacity equals the brute-force enumeration") {
    const registry   reg = test::load_default_registry();
    const auto       raw = test::load_pools("take_a_photo");
    const bound_pools pools(raw, reg.require("take_a_photo"));

    // 11 questions x 9 actions x 7 camera x 7 resolution phrases
    CHECK(pools.capacity() == 4851);
    CHECK(test::brute_force_count(raw) == 4851);
    CHECK(test::brute_force_questions(raw).size() == 4851);
}

TEST_CASE("degenerate capacities") {
    phrase_pools pools = test::tiny_pools();
    pools.question_phrases = {"Can I"};
    pools.action_phrases   = {"latch the gate"};
    pools.slots[0].surfaces = {"quickly"};
    pools.slots[1].surfaces = {"on the left side"};
    CHECK(pool_capacity(pools) == 1);

    pools.action_phrases.clear();
    CHECK(pool_capacity(pools) == 0);
}

TEST_CASE("spec examples: request and command assembly with mapping tables") {
    const registry   reg = test::load_default_registry();
    const bound_pools pools(test::load_pools("take_a_photo"), reg.require("take_a_photo"));

    // full enumeration so both target combinations are present
    const auto demos = generate(pools, pools.capacity(), 7);

    const demonstration * request =
        find_by_question(demos, "Can I take a photo using the front camera with the 4K resolution");
    REQUIRE(request != nullptr);
    CHECK(request->style == demo_style::request);
    CHECK(request->gold_call.render() == "<fn_0>(camera=\"front\", resolution=\"4K\")");

    const demonstration * command = find_by_question(demos, "snap a picture with the rear camera");
    REQUIRE(command != nullptr);
    CHECK(command->style == demo_style::command);
    CHECK(command->gold_call.render() == "<fn_0>(camera=\"back\")");

    const demonstration * bare = find_by_question(demos, "snap a picture");
    REQUIRE(bare != nullptr);
    CHECK(bare->gold_call.render() == "<fn_0>()");
}

TEST_CASE("full-capacity generation is the exact cross product") {
    const function_schema schema = test::tiny_schema();
    const phrase_pools    raw    = test::tiny_pools();
    const bound_pools     pools(raw, schema);

    const uint64_t cap = pools.capacity();
    CHECK(cap == 3 * 2 * 3 * 2);

    const auto demos = generate(pools, cap, 99);
    REQUIRE(demos.size() == cap);

    std::set<std::string> questions;
    for (const auto & demo : demos) {
        questions.insert(demo.question);
    }
    CHECK(questions.size() == cap); // pairwise distinct
    CHECK(questions == test::brute_force_questions(raw));
}

TEST_CASE("uniqueness holds across seeds and counts") {
    const function_schema schema = test::tiny_schema();
    const bound_pools     pools(test::tiny_pools(), schema);
    const uint64_t        cap = pools.capacity();

    for (uint64_t seed : {uint64_t{0}, uint64_t{1}, uint64_t{1234567}, uint64_t{0xDEADBEEF}}) {
        for (uint64_t count : {uint64_t{1}, uint64_t{2}, cap / 2, cap - 1, cap}) {
            const auto demos = generate(pools, count, seed);
            REQUIRE(demos.size() == count);
            std::set<std::string> questions;
            std::set<std::string> ids;
            for (const auto & demo : demos) {
                questions.insert(demo.question);
                ids.insert(demo.id);
            }
            CHECK(questions.size() == count);
            CHECK(ids.size() == count);
        }
    }
}

TEST_CASE("capacity-exceeded error") {
    const registry   reg = test::load_default_registry();
    const bound_pools pools(test::load_pools("take_a_photo"), reg.require("take_a_photo"));
    CHECK_THROWS_AS(generate(pools, 4852, 7), error);
    CHECK_NOTHROW(generate(pools, 4851, 7));
}

TEST_CASE("determinism: same inputs give identical demonstrations") {
    const function_schema schema = test::tiny_schema();
    const bound_pools     pools(test::tiny_pools(), schema);

    const auto a = generate(pools, 20, 42);
    const auto b = generate(pools, 20, 42);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].question == b[i].question);
        CHECK(a[i].gold_call == b[i].gold_call);
    }

    const auto c = generate(pools, 20, 43);
    bool any_difference = false;
    for (size_t i = 0; i < c.size(); ++i) {
        any_difference = any_difference || c[i].question != a[i].question;
    }
    CHECK(any_difference); // different seed, different order
}

TEST_CASE("gold args are canonical and ordered by schema") {
    const function_schema schema = test::tiny_schema();
    const bound_pools     pools(test::tiny_pools(), schema);
    for (const auto & demo : generate(pools, pools.capacity(), 5)) {
        size_t last = 0;
        for (const auto & [name, value] : demo.gold_call.args) {
            const param_spec * spec = schema.find_param(name);
            REQUIRE(spec != nullptr);
            CHECK(spec->allows(value));
            size_t pos = 0;
            for (; pos < schema.params.size(); ++pos) {
                if (schema.params[pos].name == name) {
                    break;
                }
            }
            CHECK(pos >= last);
            last = pos;
        }
        // command style iff the question phrase was empty
        const bool starts_with_action =
            demo.question.starts_with("latch the gate") || demo.question.starts_with("flip the latch");
        CHECK((demo.style == demo_style::command) == starts_with_action);
    }
}

TEST_CASE("style ratio override") {
    const function_schema schema = test::tiny_schema();
    const bound_pools     pools(test::tiny_pools(), schema);

    const auto demos = generate_styled(pools, 9, {2, 1}, 11);
    REQUIRE(demos.size() == 9);
    size_t commands = 0;
    std::set<std::string> questions;
    for (const auto & demo : demos) {
        commands += demo.style == demo_style::command ? 1 : 0;
        questions.insert(demo.question);
    }
    CHECK(commands == 3); // round(9 * 1/3)
    CHECK(questions.size() == 9);

    // only 12 command-style combinations exist in the tiny pools
    CHECK_THROWS_AS(generate_styled(pools, 36, {0, 1}, 11), error);
    CHECK_THROWS_AS(generate_styled(pools, 4, {0, 0}, 11), error);
}

TEST_CASE("oofc variants replace the question part and keep the gold call") {
    const function_schema schema = test::tiny_schema();
    const phrase_pools    raw    = test::tiny_pools();
    const bound_pools     pools(raw, schema);

    const auto demos    = generate(pools, pools.capacity(), 3);
    const auto variants = make_oofc(demos, pools, 3);
    REQUIRE(variants.size() == demos.size());

    for (size_t i = 0; i < demos.size(); ++i) {
        const auto & base    = demos[i];
        const auto & variant = variants[i];
        CHECK(variant.domain == logic_domain::out_of_logic);
        CHECK(variant.gold_call == base.gold_call);
        CHECK(variant.id == base.id + "-oofc");
        CHECK(variant.style == base.style);

        const bool starts_with_oofc = variant.question.starts_with("Would you kindly ") ||
                                      variant.question.starts_with("Is it feasible to ");
        CHECK(starts_with_oofc);
        if (base.style == demo_style::command) {
            // prepended, tail untouched
            CHECK(variant.question.ends_with(" " + base.question));
        }
    }

    // determinism
    const auto again = make_oofc(demos, pools, 3);
    for (size_t i = 0; i < variants.size(); ++i) {
        CHECK(variants[i].question == again[i].question);
    }

    phrase_pools no_oofc = raw;
    no_oofc.oofc_question_phrases.clear();
    const bound_pools bare(no_oofc, schema);
    CHECK_THROWS_AS(make_oofc(demos, bare, 3), error);

    // already-out-of-logic input violates the precondition
    CHECK_THROWS_AS(make_oofc(variants, pools, 3), error);
}

TEST_CASE("spec example: oofc phrasing on a request-style photo question") {
    const registry   reg = test::load_default_registry();
    const bound_pools pools(test::load_pools("take_a_photo"), reg.require("take_a_photo"));

    demonstration demo;
    demo.id       = "take_a_photo-000000";
    demo.function = "take_a_photo";
    demo.style    = demo_style::request;
    demo.question = "Can I take a photo using the front camera";
    demo.gold_call.token_index = 0;
    demo.gold_call.callee_name = "take_a_photo";
    demo.gold_call.args        = {{"camera", "front"}};

    // try seeds until the draw lands on the published example phrase; the
    // pool has 5 phrases, so this terminates immediately in practice
    bool found = false;
    for (uint64_t seed = 0; seed < 64 && !found; ++seed) {
        const auto variants = make_oofc({demo}, pools, seed);
        REQUIRE(variants.size() == 1);
        CHECK(variants[0].question.ends_with("take a photo using the front camera"));
        CHECK(variants[0].gold_call == demo.gold_call);
        found = variants[0].question == "Is it achievable to take a photo using the front camera";
    }
    CHECK(found);
}

TEST_CASE("pool validation rejects inconsistent inputs") {
    const function_schema schema = test::tiny_schema();

    phrase_pools bad = test::tiny_pools();
    bad.oofc_question_phrases.push_back("Can I"); // overlaps the in-logic pool
    CHECK_THROWS_AS(bound_pools(bad, schema), error);

    bad = test::tiny_pools();
    bad.slots[0].surfaces.push_back("quickly and slowly"); // two mapping keys
    CHECK_THROWS_AS(bound_pools(bad, schema), error);

    bad = test::tiny_pools();
    bad.slots[0].surfaces.push_back("gently"); // no mapping key
    CHECK_THROWS_AS(bound_pools(bad, schema), error);

    bad = test::tiny_pools();
    bad.slots[0].mapping.surface_to_value[0].second = "warp"; // not an allowed enum value
    CHECK_THROWS_AS(bound_pools(bad, schema), error);

    bad = test::tiny_pools();
    bad.question_phrases.push_back("Can I"); // duplicate phrase
    CHECK_THROWS_AS(bound_pools(bad, schema), error);

    bad = test::tiny_pools();
    bad.slots[0].param_name = "no_such_param";
    CHECK_THROWS_AS(bound_pools(bad, schema), error);

    // required param whose slot includes an empty surface
    function_schema strict = schema;
    strict.params[1].required = true;
    phrase_pools with_empty = test::tiny_pools();
    with_empty.slots[1].surfaces.push_back("");
    CHECK_THROWS_AS(bound_pools(with_empty, strict), error);
    CHECK_NOTHROW(bound_pools(test::tiny_pools(), strict));
}

TEST_CASE("emit-default empty behavior") {
    function_schema schema = test::tiny_schema();
    phrase_pools    pools  = test::tiny_pools();
    pools.slots[0].mapping.on_empty = empty_behavior::emit_default;

    const bound_pools bound(pools, schema);
    const auto demos = generate(bound, bound.capacity(), 17);
    for (const auto & demo : demos) {
        // mode is always present now: mapped value or the default
        const std::string * mode = demo.gold_call.find_arg("mode");
        REQUIRE(mode != nullptr);
        CHECK((*mode == "fast" || *mode == "slow"));
    }

    // emit-default without a schema default is rejected
    schema.params[0].default_value.reset();
    CHECK_THROWS_AS(bound_pools(pools, schema), error);
}

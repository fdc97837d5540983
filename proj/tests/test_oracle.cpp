#include "fcgen/oracle.hpp"

#include "fcgen/errors.hpp"
#include "fcgen/generator.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <memory>

using namespace fcgen;

namespace {

struct fixture {
    registry reg = test::load_default_registry();
    std::vector<std::unique_ptr<bound_pools>> owned;
    std::vector<const bound_pools *>          views;

    fixture() {
        for (const auto & schema : reg) {
            owned.push_back(
                std::make_unique<bound_pools>(test::load_pools(schema.name), schema));
            views.push_back(owned.back().get());
        }
    }
};

} // namespace

TEST_CASE("published example routes to the photo call") {
    fixture f;
    const oracle_router oracle(f.views);
    const call_expr call =
        oracle.route("Can I take a photo using the front camera with the 4K resolution");
    CHECK(call.render() == "<fn_0>(camera=\"front\", resolution=\"4K\")");
}

TEST_CASE("unroutable question raises no-action-match") {
    fixture f;
    const oracle_router oracle(f.views);
    CHECK_THROWS_WITH_AS(oracle.route("please fold the laundry"),
                         doctest::Contains("no action phrase"), error);
}

TEST_CASE("exact tie on the longest action phrase is an error") {
    function_schema first  = test::tiny_schema();
    function_schema second = test::tiny_schema();
    second.name        = "other_gate";
    second.token.index = 1;

    phrase_pools p1 = test::tiny_pools();
    phrase_pools p2 = test::tiny_pools();
    p2.function       = "other_gate";
    p2.action_phrases = {"bolt the doors", "flip the hatch"}; // same length as "latch the gate"

    const bound_pools b1(p1, first);
    const bound_pools b2(p2, second);
    const oracle_router oracle({&b1, &b2});

    CHECK_THROWS_WITH_AS(oracle.route("Can I latch the gate and bolt the doors please"),
                         doctest::Contains("ambiguous"), error);
    // one function alone resolves fine
    CHECK(oracle.route("Can I bolt the doors").token_index == 1);
}

TEST_CASE("round-trip: oracle reproduces every generated gold call") {
    fixture f;
    const oracle_router oracle(f.views);

    for (size_t i = 0; i < f.reg.size(); ++i) {
        const auto demos = generate(*f.views[i], 200, 1000 + i);
        const auto oofc  = make_oofc(demos, *f.views[i], 2000 + i);
        for (const auto & demo : demos) {
            CHECK(oracle.route(demo.question) == demo.gold_call);
        }
        for (const auto & variant : oofc) {
            CHECK(oracle.route(variant.question) == variant.gold_call);
        }
    }
}

TEST_CASE("emit-default slots are filled when no key is present") {
    function_schema schema = test::tiny_schema();
    phrase_pools    pools  = test::tiny_pools();
    pools.slots[0].mapping.on_empty = empty_behavior::emit_default;
    const bound_pools bound(pools, schema);
    const oracle_router oracle({&bound});

    const call_expr call = oracle.route("Can I latch the gate on the left side");
    const std::string * mode = call.find_arg("mode");
    REQUIRE(mode != nullptr);
    CHECK(*mode == "fast"); // schema default
}

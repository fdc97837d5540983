#include "fcgen/call_expr.hpp"

#include "fcgen/rng.hpp"

#include <doctest.h>

using namespace fcgen;

TEST_CASE("grammar identity") {
    const auto r = parse_call("<fn_0>(camera='front', resolution='4K')");
    REQUIRE(r.ok());
    CHECK(r.call->token_index == 0);
    CHECK(r.call->args_map() ==
          std::map<std::string, std::string>{{"camera", "front"}, {"resolution", "4K"}});
}

TEST_CASE("whitespace, argument order, quoting style, and trailing text are irrelevant") {
    const auto a = parse_call("<fn_0>(camera=\"front\", resolution=\"4K\")");
    const auto b = parse_call("<fn_0>( resolution = \"4K\" , camera = \"front\" )<eoc> ignored tail");
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(*a.call == *b.call);
}

TEST_CASE("prefix garbage is tolerated up to the callee") {
    const auto r = parse_call("Sure! The call you want is <fn_3>(mode=\"fast\") okay?");
    REQUIRE(r.ok());
    CHECK(r.call->token_index == 3);

    const auto named = parse_call("I would run send_email(recipient=\"Bob\") here");
    REQUIRE(named.ok());
    CHECK_FALSE(named.call->token_index.has_value());
    CHECK(named.call->callee_name == "send_email");
}

TEST_CASE("rejections") {
    CHECK_FALSE(parse_call("<fn_0>(camera=front)").ok());       // unquoted value
    CHECK_FALSE(parse_call("<fn_0>(camera=\"front\"").ok());    // unclosed paren
    CHECK_FALSE(parse_call("<fn_0> camera=\"front\")").ok());   // missing open paren
    CHECK_FALSE(parse_call("just some prose").ok());
    CHECK_FALSE(parse_call("").ok());
    CHECK_FALSE(parse_call("<fn_>()").ok());
    CHECK_FALSE(parse_call("<fn_0>(a=\"1\", a=\"2\")").ok());   // duplicate argument
    const auto r = parse_call("<fn_0>(camera=front)");
    CHECK_FALSE(r.error.empty());
}

TEST_CASE("empty argument list and bare-name callee") {
    const auto r = parse_call("<fn_7>()");
    REQUIRE(r.ok());
    CHECK(r.call->args.empty());

    const auto n = parse_call("take_a_photo()");
    REQUIRE(n.ok());
    CHECK(n.call->callee_name == "take_a_photo");
}

TEST_CASE("first well-formed call wins") {
    const auto r = parse_call("<fn_1>(broken <fn_2>(x=\"1\") <fn_3>(y=\"2\")");
    REQUIRE(r.ok());
    CHECK(r.call->token_index == 2);
}

TEST_CASE("parser is total over random garbage") {
    rng64 rng(20240817);
    const std::string alphabet = "<fn_0123456789>()=\"',_ abcxyz\t\n\\";
    for (int i = 0; i < 2000; ++i) {
        std::string text;
        const size_t len = rng.below(160);
        for (size_t j = 0; j < len; ++j) {
            text += alphabet[rng.below(alphabet.size())];
        }
        const auto r = parse_call(text); // must neither throw nor crash
        if (!r.ok()) {
            CHECK_FALSE(r.error.empty());
        }
    }
}

TEST_CASE("render and extract_call_region round-trip") {
    call_expr call;
    call.token_index = 4;
    call.callee_name = "whatever";
    call.args        = {{"a", "x y"}, {"b", "z"}};
    CHECK(call.render() == "<fn_4>(a=\"x y\", b=\"z\")");

    const std::string output = call.render() + std::string(k_end_of_call) + "\ntrailing";
    CHECK(extract_call_region(output) == call.render());
    const auto reparsed = parse_call(extract_call_region(output));
    REQUIRE(reparsed.ok());
    CHECK(*reparsed.call == call);
}

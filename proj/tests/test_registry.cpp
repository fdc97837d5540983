#include "fcgen/registry.hpp"

#include "fcgen/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace fcgen;

TEST_CASE("shipped registry loads with ten functions and sequential tokens") {
    const registry reg = test::load_default_registry();
    REQUIRE(reg.size() == 10);
    CHECK(reg.at(0).name == "take_a_photo");
    CHECK(reg.at(0).token.surface() == "<fn_0>");
    CHECK(reg.at(9).token.surface() == "<fn_9>");

    // name <-> token bijection
    std::set<int> indices;
    for (const auto & schema : reg) {
        indices.insert(schema.token.index);
        CHECK(reg.name_for(reg.token_for(schema.name)) == schema.name);
    }
    CHECK(indices.size() == reg.size());
}

TEST_CASE("take_a_photo schema matches the published parameterization") {
    const registry reg = test::load_default_registry();
    const function_schema & photo = reg.require("take_a_photo");
    REQUIRE(photo.params.size() == 2);
    CHECK(photo.params[0].name == "camera");
    CHECK(photo.params[0].allowed_values == std::vector<std::string>{"front", "back"});
    CHECK(photo.params[0].default_value == "back");
    CHECK(photo.params[1].name == "resolution");
    CHECK(photo.params[1].allowed_values == std::vector<std::string>{"720p", "1080p", "4K"});
    CHECK(photo.params[1].default_value == "1080p");
    CHECK_FALSE(photo.description.empty());
}

TEST_CASE("single-function registry gets token <fn_0>") {
    const auto doc = cfg::parse_string(R"(
[[function]]
name = "take_a_photo"
description = "d"
)");
    const registry reg = registry::from_config(doc, "t");
    CHECK(reg.size() == 1);
    CHECK(reg.token_for("take_a_photo").surface() == "<fn_0>");
}

TEST_CASE("validation failures") {
    CHECK_THROWS_AS(registry::from_config(cfg::parse_string(R"(
[[function]]
name = "dup"
description = "d"

[[function]]
name = "dup"
description = "d"
)"), "t"), error);

    CHECK_THROWS_AS(registry::from_config(cfg::parse_string(R"(
[[function]]
name = "f"
description = ""
)"), "t"), error);

    // enum default outside the allowed values
    CHECK_THROWS_AS(registry::from_config(cfg::parse_string(R"(
[[function]]
name = "f"
description = "d"

[[function.params]]
name = "p"
kind = "enum"
allowed = ["a", "b"]
default = "c"
)"), "t"), error);

    // duplicate param names within one schema
    CHECK_THROWS_AS(registry::from_config(cfg::parse_string(R"(
[[function]]
name = "f"
description = "d"

[[function.params]]
name = "p"
kind = "string"

[[function.params]]
name = "p"
kind = "string"
)"), "t"), error);
}

TEST_CASE("unknown-name and token lookups") {
    const registry reg = test::load_default_registry();
    CHECK_THROWS_AS(reg.require("no_such_fn"), error);
    CHECK(reg.find("no_such_fn") == nullptr);
    CHECK(reg.by_token_index(999) == nullptr);
    CHECK(reg.by_token_index(-1) == nullptr);
}

TEST_CASE("special token parsing") {
    CHECK(parse_special_token("<fn_0>") == 0);
    CHECK(parse_special_token("<fn_42>") == 42);
    CHECK_FALSE(parse_special_token("<fn_>").has_value());
    CHECK_FALSE(parse_special_token("<fn_x>").has_value());
    CHECK_FALSE(parse_special_token("fn_1").has_value());
    CHECK_FALSE(parse_special_token("<fn_1> ").has_value());
}

TEST_CASE("serialization round-trip reproduces an identical registry") {
    const registry reg    = test::load_default_registry();
    const registry reread = registry::from_config(
        cfg::parse_string(reg.to_config_string(), "round-trip"), "round-trip");
    CHECK(reg == reread);
}

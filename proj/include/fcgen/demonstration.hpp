#pragma once

#include "fcgen/call_expr.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fcgen {

enum class demo_style {
    request, // question part + action part + parameter parts
    command, // action part + parameter parts (empty question phrase)
};

enum class logic_domain {
    in_logic,
    out_of_logic,
};

enum class split_tag {
    train,
    test,
    unassigned,
};

std::string_view to_string(demo_style s);
std::string_view to_string(logic_domain d);
std::string_view to_string(split_tag t);

demo_style   parse_style(std::string_view text);
logic_domain parse_logic_domain(std::string_view text);
split_tag    parse_split_tag(std::string_view text);

// One generated example: the question text, its gold call, and enough
// provenance to audit how it was assembled.
struct demonstration {
    std::string  id;
    std::string  function;
    demo_style   style = demo_style::request;
    std::string  question;
    call_expr    gold_call;
    logic_domain domain = logic_domain::in_logic;
    split_tag    split  = split_tag::unassigned;

    // Chosen pool indices (question, action, then one entry per parameter
    // slot). Populated by the generator; not serialized.
    std::vector<std::pair<std::string, uint32_t>> slot_choice;
};

nlohmann::ordered_json demo_to_json(const demonstration & demo);
demonstration          demo_from_json(const nlohmann::json & doc, std::string_view where);

void write_demos_jsonl(const std::filesystem::path & path,
                       const std::vector<demonstration> & demos);
std::vector<demonstration> read_demos_jsonl(const std::filesystem::path & path);

} // namespace fcgen

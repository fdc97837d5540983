#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fcgen {

// Parsed single function call: a callee (special token, plain name, or
// both when the origin knows both) plus named string arguments.
struct call_expr {
    std::optional<int> token_index; // callee as <fn_k>
    std::string        callee_name; // may be empty when only the token is known

    // Ordered as produced (schema order for gold calls, text order for
    // parsed predictions).
    std::vector<std::pair<std::string, std::string>> args;

    const std::string * find_arg(std::string_view name) const;
    std::map<std::string, std::string> args_map() const;

    // `<fn_0>(camera="front", resolution="4K")`; the token surface wins
    // over the plain name when both are present.
    std::string render() const;

    // The token is authoritative for callee identity when present; plain
    // names are compared only when neither side carries a token.
    bool operator==(const call_expr & other) const {
        if (token_index.has_value() != other.token_index.has_value()) {
            return false;
        }
        if (token_index.has_value()) {
            return *token_index == *other.token_index && args_map() == other.args_map();
        }
        return callee_name == other.callee_name && args_map() == other.args_map();
    }
};

// Total parser for the grammar
//   call   := callee '(' [arg (',' arg)*] ')'
//   arg    := ident '=' quoted-string
//   callee := '<fn_k>' | ident
// The first well-formed call in the text wins; anything before the callee
// and after the closing parenthesis is ignored. Whitespace-insensitive;
// single- and double-quoted values accepted. Never throws.
struct call_parse_result {
    std::optional<call_expr> call;
    std::string              error;     // set when !call
    size_t                   error_pos = 0;

    bool ok() const { return call.has_value(); }
};

call_parse_result parse_call(std::string_view text);

// The call region of a rendered output: everything before the first
// end-of-call sentinel, or the whole text when no sentinel is present.
std::string_view extract_call_region(std::string_view output_text);

inline constexpr std::string_view k_end_of_call = "<eoc>";

} // namespace fcgen

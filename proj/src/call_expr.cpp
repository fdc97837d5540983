#include "fcgen/call_expr.hpp"

#include "fcgen/registry.hpp"

#include <cctype>

namespace fcgen {

namespace {

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

struct attempt {
    std::string_view text;
    size_t           pos;

    std::string fail_reason;
    size_t      fail_pos = 0;

    bool failed(const char * reason) {
        fail_reason = reason;
        fail_pos    = pos;
        return false;
    }

    void skip_ws() {
        while (pos < text.size() && is_space(text[pos])) {
            ++pos;
        }
    }

    bool parse_ident(std::string & out) {
        if (pos >= text.size() || !is_ident_start(text[pos])) {
            return failed("expected an identifier");
        }
        const size_t start = pos;
        while (pos < text.size() && is_ident_char(text[pos])) {
            ++pos;
        }
        out.assign(text.substr(start, pos - start));
        return true;
    }

    bool parse_callee(call_expr & call) {
        if (pos < text.size() && text[pos] == '<') {
            const size_t close = text.find('>', pos);
            if (close == std::string_view::npos) {
                return failed("unterminated '<...>' callee");
            }
            const auto token = parse_special_token(text.substr(pos, close - pos + 1));
            if (!token) {
                return failed("malformed special token callee");
            }
            call.token_index = *token;
            pos = close + 1;
            return true;
        }
        return parse_ident(call.callee_name);
    }

    bool parse_quoted(std::string & out) {
        if (pos >= text.size() || (text[pos] != '"' && text[pos] != '\'')) {
            return failed("expected a quoted value");
        }
        const char quote = text[pos++];
        const size_t start = pos;
        while (pos < text.size() && text[pos] != quote) {
            ++pos;
        }
        if (pos >= text.size()) {
            return failed("unterminated quoted value");
        }
        out.assign(text.substr(start, pos - start));
        ++pos;
        return true;
    }

    bool run(call_expr & call) {
        if (!parse_callee(call)) {
            return false;
        }
        skip_ws();
        if (pos >= text.size() || text[pos] != '(') {
            return failed("expected '(' after the callee");
        }
        ++pos;
        skip_ws();
        if (pos < text.size() && text[pos] == ')') {
            ++pos;
            return true;
        }
        while (true) {
            skip_ws();
            std::string name;
            if (!parse_ident(name)) {
                fail_reason = "expected an argument name";
                return false;
            }
            if (call.find_arg(name) != nullptr) {
                return failed("duplicate argument name");
            }
            skip_ws();
            if (pos >= text.size() || text[pos] != '=') {
                return failed("expected '=' after the argument name");
            }
            ++pos;
            skip_ws();
            std::string value;
            if (!parse_quoted(value)) {
                return false;
            }
            call.args.emplace_back(std::move(name), std::move(value));
            skip_ws();
            if (pos >= text.size()) {
                return failed("expected ',' or ')'");
            }
            if (text[pos] == ',') {
                ++pos;
                continue;
            }
            if (text[pos] == ')') {
                ++pos;
                return true;
            }
            return failed("expected ',' or ')'");
        }
    }
};

} // namespace

const std::string * call_expr::find_arg(std::string_view name) const {
    for (const auto & [arg_name, value] : args) {
        if (arg_name == name) {
            return &value;
        }
    }
    return nullptr;
}

std::map<std::string, std::string> call_expr::args_map() const {
    return {args.begin(), args.end()};
}

std::string call_expr::render() const {
    std::string out = token_index ? special_token{*token_index}.surface() : callee_name;
    out += '(';
    for (size_t i = 0; i < args.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += args[i].first;
        out += "=\"";
        out += args[i].second;
        out += '"';
    }
    out += ')';
    return out;
}

call_parse_result parse_call(std::string_view text) {
    call_parse_result result;
    std::string best_reason = "no function call found";
    size_t      best_pos    = 0;

    for (size_t start = 0; start < text.size(); ++start) {
        const char c = text[start];
        if (c != '<' && !is_ident_start(c)) {
            continue;
        }
        // Only try identifier starts, not every character of a longer word.
        if (is_ident_start(c) && start > 0 && is_ident_char(text[start - 1])) {
            continue;
        }
        attempt a{text, start, {}, 0};
        call_expr call;
        if (a.run(call)) {
            result.call = std::move(call);
            return result;
        }
        if (a.fail_pos > best_pos) {
            best_pos    = a.fail_pos;
            best_reason = a.fail_reason;
        }
    }
    result.error     = best_reason;
    result.error_pos = best_pos;
    return result;
}

std::string_view extract_call_region(std::string_view output_text) {
    const size_t sentinel = output_text.find(k_end_of_call);
    if (sentinel == std::string_view::npos) {
        return output_text;
    }
    return output_text.substr(0, sentinel);
}

} // namespace fcgen

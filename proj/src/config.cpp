#include "fcgen/config.hpp"

#include "fcgen/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fcgen::cfg {

namespace {

bool is_bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

struct parser {
    std::string_view text;
    std::string      source;
    size_t           pos  = 0;
    int              line = 1;

    table   root;
    table * current = nullptr;

    explicit parser(std::string_view t, std::string_view src)
        : text(t), source(src) {
        current = &root;
    }

    [[noreturn]] void fail(const std::string & message) const {
        throw_parse(source + ":" + std::to_string(line) + ": " + message);
    }

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    char advance() {
        const char c = text[pos++];
        if (c == '\n') {
            ++line;
        }
        return c;
    }

    void skip_ws_and_comments() {
        while (!eof()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') {
                    advance();
                }
            } else {
                break;
            }
        }
    }

    // Horizontal whitespace only; used inside arrays where newlines matter
    // no more than spaces, so this is a convenience alias there too.
    void skip_inline_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) {
            advance();
        }
    }

    std::string parse_key() {
        if (eof()) {
            fail("expected a key");
        }
        if (peek() == '"') {
            return parse_basic_string();
        }
        size_t start = pos;
        while (!eof() && is_bare_key_char(peek())) {
            advance();
        }
        if (pos == start) {
            fail(std::string("unexpected character '") + peek() + "' where a key was expected");
        }
        return std::string(text.substr(start, pos - start));
    }

    std::string parse_basic_string() {
        // caller guarantees peek() == '"'
        advance();
        std::string out;
        while (true) {
            if (eof()) {
                fail("unterminated string");
            }
            char c = advance();
            if (c == '"') {
                break;
            }
            if (c == '\n') {
                fail("newline inside basic string (use \"\"\"...\"\"\" for multi-line text)");
            }
            if (c == '\\') {
                if (eof()) {
                    fail("unterminated escape sequence");
                }
                const char e = advance();
                switch (e) {
                    case '"':  out += '"';  break;
                    case '\\': out += '\\'; break;
                    case 'n':  out += '\n'; break;
                    case 't':  out += '\t'; break;
                    case 'r':  out += '\r'; break;
                    default:
                        fail(std::string("unsupported escape '\\") + e + "'");
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    std::string parse_multiline_string() {
        // caller consumed the opening `"""`
        std::string out;
        // A newline immediately after the opening quotes is trimmed.
        if (!eof() && peek() == '\r') {
            advance();
        }
        if (!eof() && peek() == '\n') {
            advance();
        }
        while (true) {
            if (eof()) {
                fail("unterminated multi-line string");
            }
            if (text.compare(pos, 3, "\"\"\"") == 0) {
                pos += 3;
                break;
            }
            char c = advance();
            if (c == '\\') {
                if (eof()) {
                    fail("unterminated escape sequence");
                }
                const char e = advance();
                switch (e) {
                    case '"':  out += '"';  break;
                    case '\\': out += '\\'; break;
                    case 'n':  out += '\n'; break;
                    case 't':  out += '\t'; break;
                    case 'r':  out += '\r'; break;
                    default:
                        fail(std::string("unsupported escape '\\") + e + "'");
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    value parse_value() {
        if (eof()) {
            fail("expected a value");
        }
        value v;
        const char c = peek();
        if (c == '"') {
            if (text.compare(pos, 3, "\"\"\"") == 0) {
                pos += 3;
                v.k   = value::kind::string;
                v.str = parse_multiline_string();
            } else {
                v.k   = value::kind::string;
                v.str = parse_basic_string();
            }
            return v;
        }
        if (c == '[') {
            advance();
            v.k = value::kind::string_array;
            while (true) {
                skip_ws_and_comments();
                if (eof()) {
                    fail("unterminated array");
                }
                if (peek() == ']') {
                    advance();
                    break;
                }
                if (peek() != '"') {
                    fail("arrays may contain strings only");
                }
                v.strings.push_back(parse_basic_string());
                skip_ws_and_comments();
                if (eof()) {
                    fail("unterminated array");
                }
                if (peek() == ',') {
                    advance();
                } else if (peek() != ']') {
                    fail("expected ',' or ']' in array");
                }
            }
            return v;
        }
        if (text.compare(pos, 4, "true") == 0) {
            pos += 4;
            v.k = value::kind::boolean;
            v.flag = true;
            return v;
        }
        if (text.compare(pos, 5, "false") == 0) {
            pos += 5;
            v.k = value::kind::boolean;
            v.flag = false;
            return v;
        }
        if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                              peek() == '.' || peek() == '-' || peek() == '+' ||
                              peek() == 'e' || peek() == 'E' || peek() == '_')) {
                advance();
            }
            std::string digits(text.substr(start, pos - start));
            std::erase(digits, '_');
            char * end = nullptr;
            const double parsed = std::strtod(digits.c_str(), &end);
            if (end == digits.c_str() || *end != '\0') {
                fail("malformed number '" + digits + "'");
            }
            v.k = value::kind::number;
            v.num = parsed;
            return v;
        }
        fail(std::string("unexpected character '") + c + "' where a value was expected");
    }

    std::vector<std::string> parse_header_path() {
        std::vector<std::string> segments;
        while (true) {
            skip_inline_ws();
            segments.push_back(parse_key());
            skip_inline_ws();
            if (!eof() && peek() == '.') {
                advance();
                continue;
            }
            break;
        }
        return segments;
    }

    // Walks to the table a header's parent path names, creating implicit
    // tables along the way. Array-of-table segments resolve to their most
    // recently appended element, matching TOML semantics.
    table * descend(table * node, const std::string & segment) {
        for (auto & [key, val] : node->entries) {
            if (key != segment) {
                continue;
            }
            switch (val.k) {
                case value::kind::table:
                    return &val.tables.front();
                case value::kind::table_array:
                    return &val.tables.back();
                default:
                    fail("key '" + segment + "' already holds a " +
                         std::string(val.kind_name()) + ", not a table");
            }
        }
        value implicit;
        implicit.k = value::kind::table;
        implicit.tables.emplace_back();
        node->entries.emplace_back(segment, std::move(implicit));
        return &node->entries.back().second.tables.front();
    }

    void handle_table_header(const std::vector<std::string> & path) {
        table * node = &root;
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            node = descend(node, path[i]);
        }
        const std::string & leaf = path.back();
        for (auto & [key, val] : node->entries) {
            if (key == leaf) {
                fail("duplicate table header [" + leaf + "]");
            }
        }
        value v;
        v.k = value::kind::table;
        v.tables.emplace_back();
        node->entries.emplace_back(leaf, std::move(v));
        current = &node->entries.back().second.tables.front();
    }

    void handle_table_array_header(const std::vector<std::string> & path) {
        table * node = &root;
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            node = descend(node, path[i]);
        }
        const std::string & leaf = path.back();
        for (auto & [key, val] : node->entries) {
            if (key == leaf) {
                if (val.k != value::kind::table_array) {
                    fail("key '" + leaf + "' already holds a " +
                         std::string(val.kind_name()) + ", not an array of tables");
                }
                val.tables.emplace_back();
                current = &val.tables.back();
                return;
            }
        }
        value v;
        v.k = value::kind::table_array;
        v.tables.emplace_back();
        node->entries.emplace_back(leaf, std::move(v));
        current = &node->entries.back().second.tables.back();
    }

    void run() {
        while (true) {
            skip_ws_and_comments();
            if (eof()) {
                break;
            }
            if (peek() == '[') {
                advance();
                const bool is_array = !eof() && peek() == '[';
                if (is_array) {
                    advance();
                }
                auto path = parse_header_path();
                if (eof() || peek() != ']') {
                    fail("expected ']' to close the table header");
                }
                advance();
                if (is_array) {
                    if (eof() || peek() != ']') {
                        fail("expected ']]' to close the array-of-tables header");
                    }
                    advance();
                }
                if (is_array) {
                    handle_table_array_header(path);
                } else {
                    handle_table_header(path);
                }
                continue;
            }
            const std::string key = parse_key();
            skip_inline_ws();
            if (eof() || peek() != '=') {
                fail("expected '=' after key '" + key + "'");
            }
            advance();
            skip_inline_ws();
            value v = parse_value();
            for (const auto & [existing, unused] : current->entries) {
                if (existing == key) {
                    fail("duplicate key '" + key + "'");
                }
            }
            current->entries.emplace_back(key, std::move(v));
        }
    }
};

[[noreturn]] void missing(std::string_view key, std::string_view context) {
    throw_validation(std::string(context) + ": missing required key '" + std::string(key) + "'");
}

[[noreturn]] void wrong_type(std::string_view key, std::string_view context,
                             std::string_view wanted, const value & v) {
    throw_validation(std::string(context) + ": key '" + std::string(key) + "' must be a " +
                     std::string(wanted) + ", found " + v.kind_name());
}

} // namespace

const char * value::kind_name() const {
    switch (k) {
        case kind::string:       return "string";
        case kind::number:       return "number";
        case kind::boolean:      return "boolean";
        case kind::string_array: return "array of strings";
        case kind::table:        return "table";
        case kind::table_array:  return "array of tables";
    }
    return "unknown";
}

const value * table::find(std::string_view key) const {
    for (const auto & [k, v] : entries) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

const std::string & table::get_string(std::string_view key, std::string_view context) const {
    const value * v = find(key);
    if (v == nullptr) {
        missing(key, context);
    }
    if (v->k != value::kind::string) {
        wrong_type(key, context, "string", *v);
    }
    return v->str;
}

std::string table::get_string_or(std::string_view key, std::string_view fallback) const {
    const value * v = find(key);
    if (v == nullptr) {
        return std::string(fallback);
    }
    if (v->k != value::kind::string) {
        wrong_type(key, "config", "string", *v);
    }
    return v->str;
}

double table::get_number(std::string_view key, std::string_view context) const {
    const value * v = find(key);
    if (v == nullptr) {
        missing(key, context);
    }
    if (v->k != value::kind::number) {
        wrong_type(key, context, "number", *v);
    }
    return v->num;
}

double table::get_number_or(std::string_view key, double fallback) const {
    const value * v = find(key);
    if (v == nullptr) {
        return fallback;
    }
    if (v->k != value::kind::number) {
        wrong_type(key, "config", "number", *v);
    }
    return v->num;
}

int64_t table::get_integer(std::string_view key, std::string_view context) const {
    const double d = get_number(key, context);
    const auto   i = static_cast<int64_t>(d);
    if (static_cast<double>(i) != d) {
        throw_validation(std::string(context) + ": key '" + std::string(key) +
                         "' must be an integer");
    }
    return i;
}

int64_t table::get_integer_or(std::string_view key, int64_t fallback) const {
    if (find(key) == nullptr) {
        return fallback;
    }
    return get_integer(key, "config");
}

bool table::get_bool_or(std::string_view key, bool fallback) const {
    const value * v = find(key);
    if (v == nullptr) {
        return fallback;
    }
    if (v->k != value::kind::boolean) {
        wrong_type(key, "config", "boolean", *v);
    }
    return v->flag;
}

const std::vector<std::string> & table::get_string_array(std::string_view key,
                                                         std::string_view context) const {
    const value * v = find(key);
    if (v == nullptr) {
        missing(key, context);
    }
    if (v->k != value::kind::string_array) {
        wrong_type(key, context, "array of strings", *v);
    }
    return v->strings;
}

std::vector<std::string> table::get_string_array_or_empty(std::string_view key,
                                                          std::string_view context) const {
    const value * v = find(key);
    if (v == nullptr) {
        return {};
    }
    if (v->k != value::kind::string_array) {
        wrong_type(key, context, "array of strings", *v);
    }
    return v->strings;
}

const table * table::find_table(std::string_view key) const {
    const value * v = find(key);
    if (v == nullptr) {
        return nullptr;
    }
    if (v->k != value::kind::table) {
        wrong_type(key, "config", "table", *v);
    }
    return &v->tables.front();
}

const std::vector<table> & table::get_table_array(std::string_view key,
                                                  std::string_view context) const {
    const value * v = find(key);
    if (v == nullptr) {
        missing(key, context);
    }
    if (v->k != value::kind::table_array) {
        wrong_type(key, context, "array of tables", *v);
    }
    return v->tables;
}

table parse_string(std::string_view text, std::string_view source_name) {
    parser p(text, source_name);
    p.run();
    return std::move(p.root);
}

table parse_file(const std::filesystem::path & path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_io("cannot open config file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str(), path.string());
}

std::string quote_string(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
            case '"':  out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n";  break;
            case '\t': out += "\\t";  break;
            case '\r': out += "\\r";  break;
            default:   out += c;      break;
        }
    }
    out += '"';
    return out;
}

std::string quote_multiline(std::string_view s) {
    std::string out = "\"\"\"\n";
    for (const char c : s) {
        if (c == '\\') {
            out += "\\\\";
        } else if (c == '"') {
            out += "\\\"";
        } else {
            out += c;
        }
    }
    out += "\"\"\"";
    return out;
}

} // namespace fcgen::cfg

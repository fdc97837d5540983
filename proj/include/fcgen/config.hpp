#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fcgen::cfg {

// Declarative config reader for the schema, pools, scores, and run-config
// files. The accepted grammar is a TOML subset (documented in the README):
// `key = value` pairs, `[table]` and `[[array-of-table]]` headers with
// dotted paths, basic and triple-quoted strings, arrays of strings,
// booleans, numbers, and `#` comments. Entry order is preserved; the
// registry relies on it for special-token assignment.

struct table;

struct value {
    enum class kind {
        string,
        number,
        boolean,
        string_array,
        table,
        table_array,
    };

    kind k = kind::string;

    std::string              str;
    double                   num = 0.0;
    bool                     flag = false;
    std::vector<std::string> strings;
    std::vector<table>       tables; // size 1 for kind::table

    const char * kind_name() const;
};

struct table {
    std::vector<std::pair<std::string, value>> entries;

    const value * find(std::string_view key) const;
    bool          has(std::string_view key) const { return find(key) != nullptr; }

    // Typed accessors; throw a validation error naming `context` and the
    // key when the entry is missing or has the wrong type.
    const std::string & get_string(std::string_view key, std::string_view context) const;
    std::string get_string_or(std::string_view key, std::string_view fallback) const;
    double      get_number(std::string_view key, std::string_view context) const;
    double      get_number_or(std::string_view key, double fallback) const;
    int64_t     get_integer(std::string_view key, std::string_view context) const;
    int64_t     get_integer_or(std::string_view key, int64_t fallback) const;
    bool        get_bool_or(std::string_view key, bool fallback) const;

    const std::vector<std::string> & get_string_array(std::string_view key,
                                                      std::string_view context) const;
    // Empty when the key is absent.
    std::vector<std::string> get_string_array_or_empty(std::string_view key,
                                                       std::string_view context) const;

    const table *              find_table(std::string_view key) const;
    const std::vector<table> & get_table_array(std::string_view key,
                                               std::string_view context) const;
};

table parse_string(std::string_view text, std::string_view source_name = "<string>");
table parse_file(const std::filesystem::path & path);

// Writer helpers used to serialize a registry back to the same grammar.
std::string quote_string(std::string_view s);
std::string quote_multiline(std::string_view s);

} // namespace fcgen::cfg

#pragma once

#include "fcgen/config.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fcgen {

enum class param_kind {
    string_enum,
    free_string,
};

struct param_spec {
    std::string                name;
    param_kind                 kind = param_kind::free_string;
    std::vector<std::string>   allowed_values; // string_enum only
    std::optional<std::string> default_value;
    bool                       required = false;

    bool allows(std::string_view candidate) const;

    bool operator==(const param_spec &) const = default;
};

// Output symbol standing in for a function name, `<fn_k>` with k equal to
// the schema's position in the registry.
struct special_token {
    int index = 0;

    std::string surface() const;

    bool operator==(const special_token &) const = default;
};

// "<fn_3>" -> 3; nullopt when the text is not a token.
std::optional<int> parse_special_token(std::string_view text);

struct function_schema {
    std::string             name;
    std::string             description;
    std::vector<param_spec> params;
    special_token           token;

    const param_spec * find_param(std::string_view param_name) const;

    bool operator==(const function_schema &) const = default;
};

class registry {
  public:
    registry() = default;

    static registry load_file(const std::filesystem::path & path);
    static registry from_config(const cfg::table & doc, std::string_view source);

    size_t size() const { return schemas_.size(); }
    bool   empty() const { return schemas_.empty(); }

    const function_schema & at(size_t index) const;
    const function_schema * find(std::string_view name) const;
    // Throws an unknown-name validation error.
    const function_schema & require(std::string_view name) const;
    const function_schema * by_token_index(int index) const;

    special_token       token_for(std::string_view name) const;
    const std::string & name_for(special_token token) const;

    auto begin() const { return schemas_.begin(); }
    auto end() const { return schemas_.end(); }

    // Serializes back to the schema config grammar; parsing the result
    // yields an identical registry.
    std::string to_config_string() const;

    bool operator==(const registry & other) const { return schemas_ == other.schemas_; }

  private:
    std::vector<function_schema>            schemas_;
    std::unordered_map<std::string, size_t> index_by_name_;
};

} // namespace fcgen

#include "fcgen/registry.hpp"

#include "fcgen/errors.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

namespace fcgen {

namespace {

constexpr std::string_view kTokenPrefix = "<fn_";
constexpr std::string_view kTokenSuffix = ">";

param_kind parse_kind(const std::string & text, const std::string & context) {
    if (text == "enum") {
        return param_kind::string_enum;
    }
    if (text == "string") {
        return param_kind::free_string;
    }
    throw_validation(context + ": param kind must be 'enum' or 'string', found '" + text + "'");
}

param_spec parse_param(const cfg::table & entry, const std::string & context) {
    param_spec spec;
    spec.name = entry.get_string("name", context);
    if (spec.name.empty()) {
        throw_validation(context + ": param name must be non-empty");
    }
    spec.kind     = parse_kind(entry.get_string("kind", context), context + " param '" + spec.name + "'");
    spec.required = entry.get_bool_or("required", false);

    const std::string param_context = context + " param '" + spec.name + "'";
    if (spec.kind == param_kind::string_enum) {
        spec.allowed_values = entry.get_string_array("allowed", param_context);
        if (spec.allowed_values.empty()) {
            throw_validation(param_context + ": 'allowed' must list at least one value");
        }
        std::unordered_set<std::string_view> seen;
        for (const auto & v : spec.allowed_values) {
            if (v.empty()) {
                throw_validation(param_context + ": allowed values must be non-empty strings");
            }
            if (!seen.insert(v).second) {
                throw_validation(param_context + ": duplicate allowed value '" + v + "'");
            }
        }
    } else if (entry.has("allowed")) {
        throw_validation(param_context + ": 'allowed' is only valid for kind 'enum'");
    }

    if (entry.has("default")) {
        spec.default_value = entry.get_string("default", param_context);
        if (spec.kind == param_kind::string_enum && !spec.allows(*spec.default_value)) {
            throw_validation(param_context + ": default '" + *spec.default_value +
                             "' is not among the allowed values");
        }
    }
    return spec;
}

} // namespace

bool param_spec::allows(std::string_view candidate) const {
    if (kind == param_kind::free_string) {
        return true;
    }
    return std::find(allowed_values.begin(), allowed_values.end(), candidate) !=
           allowed_values.end();
}

std::string special_token::surface() const {
    return std::string(kTokenPrefix) + std::to_string(index) + std::string(kTokenSuffix);
}

std::optional<int> parse_special_token(std::string_view text) {
    if (text.size() <= kTokenPrefix.size() + kTokenSuffix.size() ||
        text.substr(0, kTokenPrefix.size()) != kTokenPrefix || text.back() != '>') {
        return std::nullopt;
    }
    const std::string_view digits =
        text.substr(kTokenPrefix.size(), text.size() - kTokenPrefix.size() - 1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 0) {
        return std::nullopt;
    }
    return value;
}

const param_spec * function_schema::find_param(std::string_view param_name) const {
    for (const auto & p : params) {
        if (p.name == param_name) {
            return &p;
        }
    }
    return nullptr;
}

registry registry::load_file(const std::filesystem::path & path) {
    return from_config(cfg::parse_file(path), path.string());
}

registry registry::from_config(const cfg::table & doc, std::string_view source) {
    registry reg;
    const std::string context(source);
    const auto & functions = doc.get_table_array("function", context);
    if (functions.empty()) {
        throw_validation(context + ": the registry must declare at least one [[function]]");
    }

    for (const auto & entry : functions) {
        function_schema schema;
        schema.name = entry.get_string("name", context);
        const std::string fn_context = context + " function '" + schema.name + "'";
        if (schema.name.empty()) {
            throw_validation(context + ": function name must be non-empty");
        }
        schema.description = entry.get_string("description", fn_context);
        if (schema.description.empty()) {
            throw_validation(fn_context + ": description must be non-empty");
        }
        if (const cfg::value * params = entry.find("params"); params != nullptr) {
            for (const auto & p : entry.get_table_array("params", fn_context)) {
                param_spec spec = parse_param(p, fn_context);
                if (schema.find_param(spec.name) != nullptr) {
                    throw_validation(fn_context + ": duplicate param '" + spec.name + "'");
                }
                schema.params.push_back(std::move(spec));
            }
        }
        schema.token.index = static_cast<int>(reg.schemas_.size());
        if (reg.index_by_name_.contains(schema.name)) {
            throw_validation(context + ": duplicate function name '" + schema.name + "'");
        }
        reg.index_by_name_.emplace(schema.name, reg.schemas_.size());
        reg.schemas_.push_back(std::move(schema));
    }
    return reg;
}

const function_schema & registry::at(size_t index) const {
    return schemas_.at(index);
}

const function_schema * registry::find(std::string_view name) const {
    const auto it = index_by_name_.find(std::string(name));
    return it == index_by_name_.end() ? nullptr : &schemas_[it->second];
}

const function_schema & registry::require(std::string_view name) const {
    const function_schema * schema = find(name);
    if (schema == nullptr) {
        throw_validation("unknown function name: '" + std::string(name) + "'");
    }
    return *schema;
}

const function_schema * registry::by_token_index(int index) const {
    if (index < 0 || static_cast<size_t>(index) >= schemas_.size()) {
        return nullptr;
    }
    return &schemas_[static_cast<size_t>(index)];
}

special_token registry::token_for(std::string_view name) const {
    return require(name).token;
}

const std::string & registry::name_for(special_token token) const {
    const function_schema * schema = by_token_index(token.index);
    if (schema == nullptr) {
        throw_validation("no function registered for token " + token.surface());
    }
    return schema->name;
}

std::string registry::to_config_string() const {
    std::string out;
    for (const auto & schema : schemas_) {
        out += "[[function]]\n";
        out += "name = " + cfg::quote_string(schema.name) + "\n";
        out += "description = " + cfg::quote_multiline(schema.description) + "\n";
        for (const auto & p : schema.params) {
            out += "\n[[function.params]]\n";
            out += "name = " + cfg::quote_string(p.name) + "\n";
            out += std::string("kind = ") +
                   (p.kind == param_kind::string_enum ? "\"enum\"" : "\"string\"") + "\n";
            if (p.kind == param_kind::string_enum) {
                out += "allowed = [";
                for (size_t i = 0; i < p.allowed_values.size(); ++i) {
                    out += (i == 0 ? "" : ", ") + cfg::quote_string(p.allowed_values[i]);
                }
                out += "]\n";
            }
            if (p.default_value) {
                out += "default = " + cfg::quote_string(*p.default_value) + "\n";
            }
            out += std::string("required = ") + (p.required ? "true" : "false") + "\n";
        }
        out += "\n";
    }
    return out;
}

} // namespace fcgen

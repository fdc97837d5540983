#include "fcgen/phrase_pools.hpp"

#include "fcgen/config.hpp"
#include "fcgen/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace fcgen {

namespace {

void require_unique(const std::vector<std::string> & items, const std::string & what) {
    std::unordered_set<std::string_view> seen;
    for (const auto & item : items) {
        if (!seen.insert(item).second) {
            throw_validation(what + ": duplicate entry '" + item + "'");
        }
    }
}

void require_non_empty_entries(const std::vector<std::string> & items, const std::string & what) {
    for (const auto & item : items) {
        if (item.empty()) {
            throw_validation(what + ": empty strings are not allowed here");
        }
    }
}

empty_behavior parse_empty_behavior(const std::string & text, const std::string & context) {
    if (text == "omit") {
        return empty_behavior::omit_param;
    }
    if (text == "default") {
        return empty_behavior::emit_default;
    }
    throw_validation(context + ": 'empty' must be 'omit' or 'default', found '" + text + "'");
}

} // namespace

uint64_t pool_capacity(const phrase_pools & pools) {
    unsigned __int128 product = 1;
    const auto multiply = [&](size_t n) {
        product *= static_cast<unsigned __int128>(n);
        if (product > static_cast<unsigned __int128>(UINT64_MAX)) {
            throw_validation("pool capacity for '" + pools.function + "' overflows 64 bits");
        }
    };
    multiply(pools.question_phrases.size());
    multiply(pools.action_phrases.size());
    for (const auto & slot : pools.slots) {
        multiply(slot.surfaces.size());
    }
    return static_cast<uint64_t>(product);
}

phrase_pools load_pools_file(const std::filesystem::path & path) {
    const cfg::table doc = cfg::parse_file(path);
    const std::string context = path.string();

    phrase_pools pools;
    pools.function              = doc.get_string("function", context);
    pools.question_phrases      = doc.get_string_array("questions", context);
    pools.action_phrases        = doc.get_string_array("actions", context);
    pools.oofc_question_phrases = doc.get_string_array_or_empty("oofc_questions", context);

    if (doc.has("slot")) {
        for (const auto & entry : doc.get_table_array("slot", context)) {
            param_slot slot;
            slot.param_name = entry.get_string("param", context);
            slot.surfaces   = entry.get_string_array("surfaces", context);
            const std::string slot_context = context + " slot '" + slot.param_name + "'";
            slot.mapping.on_empty =
                parse_empty_behavior(entry.get_string_or("empty", "omit"), slot_context);
            const cfg::table * map = entry.find_table("map");
            if (map == nullptr) {
                throw_validation(slot_context + ": missing [slot.map] table");
            }
            for (const auto & [key, value] : map->entries) {
                if (value.k != cfg::value::kind::string) {
                    throw_validation(slot_context + ": mapping values must be strings");
                }
                slot.mapping.surface_to_value.emplace_back(key, value.str);
            }
            pools.slots.push_back(std::move(slot));
        }
    }
    return pools;
}

bound_pools::bound_pools(phrase_pools pools, const function_schema & schema)
    : pools_(std::move(pools)), schema_(&schema) {
    const std::string context = "pools for '" + pools_.function + "'";

    if (pools_.function != schema.name) {
        throw_validation(context + ": bound against schema '" + schema.name + "'");
    }

    require_unique(pools_.question_phrases, context + " questions");
    require_unique(pools_.action_phrases, context + " actions");
    require_non_empty_entries(pools_.action_phrases, context + " actions");
    require_unique(pools_.oofc_question_phrases, context + " oofc_questions");
    require_non_empty_entries(pools_.oofc_question_phrases, context + " oofc_questions");

    std::unordered_set<std::string_view> in_logic(pools_.question_phrases.begin(),
                                                  pools_.question_phrases.end());
    for (const auto & phrase : pools_.oofc_question_phrases) {
        if (in_logic.contains(phrase)) {
            throw_validation(context + ": oofc question '" + phrase +
                             "' also appears in the in-logic question pool");
        }
    }

    std::unordered_set<std::string_view> covered;
    for (const auto & slot : pools_.slots) {
        const std::string slot_context = context + " slot '" + slot.param_name + "'";
        const param_spec * spec = schema.find_param(slot.param_name);
        if (spec == nullptr) {
            throw_validation(slot_context + ": schema has no such parameter");
        }
        if (!covered.insert(slot.param_name).second) {
            throw_validation(slot_context + ": duplicate slot");
        }
        require_unique(slot.surfaces, slot_context + " surfaces");
        if (slot.surfaces.empty()) {
            throw_validation(slot_context + ": surface list must not be empty");
        }

        if (slot.mapping.surface_to_value.empty()) {
            throw_validation(slot_context + ": mapping table must not be empty");
        }
        std::unordered_set<std::string_view> keys;
        for (const auto & [key, value] : slot.mapping.surface_to_value) {
            if (key.empty()) {
                throw_validation(slot_context + ": mapping keys must be non-empty");
            }
            if (!keys.insert(key).second) {
                throw_validation(slot_context + ": duplicate mapping key '" + key + "'");
            }
            if (value.empty()) {
                throw_validation(slot_context + ": mapping value for '" + key +
                                 "' must be non-empty");
            }
            if (!spec->allows(value)) {
                throw_validation(slot_context + ": mapping value '" + value +
                                 "' is not allowed for parameter '" + spec->name + "'");
            }
        }

        std::vector<std::optional<std::string>> resolved;
        resolved.reserve(slot.surfaces.size());
        for (const auto & surface : slot.surfaces) {
            if (surface.empty()) {
                if (slot.mapping.on_empty == empty_behavior::emit_default) {
                    if (!spec->default_value) {
                        throw_validation(slot_context +
                                         ": empty='default' requires a schema default");
                    }
                    resolved.emplace_back(*spec->default_value);
                } else {
                    if (spec->required) {
                        throw_validation(slot_context +
                                         ": required parameter cannot have an omitted "
                                         "(empty) surface");
                    }
                    resolved.emplace_back(std::nullopt);
                }
                continue;
            }
            // Exactly one mapping key must occur in the surface, otherwise
            // the derived argument value would be ambiguous.
            const std::string * matched = nullptr;
            for (const auto & [key, value] : slot.mapping.surface_to_value) {
                if (surface.find(key) == std::string::npos) {
                    continue;
                }
                if (matched != nullptr) {
                    throw_validation(slot_context + ": surface '" + surface +
                                     "' matches more than one mapping key");
                }
                matched = &value;
            }
            if (matched == nullptr) {
                throw_validation(slot_context + ": surface '" + surface +
                                 "' matches no mapping key");
            }
            resolved.emplace_back(*matched);
        }
        resolved_.push_back(std::move(resolved));
    }

    for (const auto & spec : schema.params) {
        if (spec.required && !covered.contains(spec.name)) {
            throw_validation(context + ": required parameter '" + spec.name +
                             "' has no slot");
        }
    }

    capacity_ = pool_capacity(pools_);
}

} // namespace fcgen

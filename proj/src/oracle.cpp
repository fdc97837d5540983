#include "fcgen/oracle.hpp"

#include "fcgen/errors.hpp"

#include <algorithm>

namespace fcgen {

oracle_router::oracle_router(const std::vector<const bound_pools *> & pools) : pools_(pools) {
    if (pools_.empty()) {
        throw_validation("oracle router needs at least one pool set");
    }
}

call_expr oracle_router::route(std::string_view question) const {
    // Longest contained action phrase wins; an exact length tie between
    // two functions is an error rather than a silent pick.
    const bound_pools * routed     = nullptr;
    size_t              best_len   = 0;
    bool                ambiguous  = false;
    std::string         tied_names;

    for (const bound_pools * candidate : pools_) {
        size_t local_best = 0;
        for (const auto & phrase : candidate->pools().action_phrases) {
            if (phrase.size() > local_best && question.find(phrase) != std::string_view::npos) {
                local_best = phrase.size();
            }
        }
        if (local_best == 0) {
            continue;
        }
        if (local_best > best_len) {
            best_len  = local_best;
            routed    = candidate;
            ambiguous = false;
        } else if (local_best == best_len && routed != nullptr &&
                   candidate->pools().function != routed->pools().function) {
            ambiguous  = true;
            tied_names = routed->pools().function + "' and '" + candidate->pools().function;
        }
    }

    if (routed == nullptr) {
        throw_validation("no action phrase of any registered function matches: \"" +
                         std::string(question) + "\"");
    }
    if (ambiguous) {
        throw_validation("ambiguous action match between '" + tied_names + "' for: \"" +
                         std::string(question) + "\"");
    }

    const phrase_pools &    pools  = routed->pools();
    const function_schema & schema = routed->schema();

    call_expr call;
    call.token_index = schema.token.index;
    call.callee_name = schema.name;

    std::vector<std::pair<std::string, std::string>> args;
    for (const auto & slot : pools.slots) {
        // Longest mapping key contained in the question decides the value;
        // no key present means the empty surface was chosen.
        const std::string * value   = nullptr;
        size_t              key_len = 0;
        for (const auto & [key, mapped] : slot.mapping.surface_to_value) {
            if (key.size() > key_len && question.find(key) != std::string_view::npos) {
                key_len = key.size();
                value   = &mapped;
            }
        }
        if (value != nullptr) {
            args.emplace_back(slot.param_name, *value);
        } else if (slot.mapping.on_empty == empty_behavior::emit_default) {
            const param_spec * spec = schema.find_param(slot.param_name);
            if (spec != nullptr && spec->default_value) {
                args.emplace_back(slot.param_name, *spec->default_value);
            }
        }
    }

    std::stable_sort(args.begin(), args.end(), [&schema](const auto & a, const auto & b) {
        const auto pos = [&schema](const std::string & name) {
            for (size_t i = 0; i < schema.params.size(); ++i) {
                if (schema.params[i].name == name) {
                    return i;
                }
            }
            return schema.params.size();
        };
        return pos(a.first) < pos(b.first);
    });
    call.args = std::move(args);
    return call;
}

} // namespace fcgen

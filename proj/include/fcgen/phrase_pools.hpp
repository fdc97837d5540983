#pragma once

#include "fcgen/registry.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fcgen {

// How a slot contributes to the gold call when its chosen surface phrase
// is the empty string.
enum class empty_behavior {
    omit_param,   // the parameter is left out of the call
    emit_default, // the schema default is emitted explicitly
};

// Surface-key -> canonical-value mapping table for one parameter slot,
// e.g. "rear" -> "back". Keys are substrings of the slot's surface
// phrases; each non-empty surface must contain exactly one key.
struct slot_value_mapping {
    std::vector<std::pair<std::string, std::string>> surface_to_value;
    empty_behavior on_empty = empty_behavior::omit_param;
};

struct param_slot {
    std::string              param_name;
    std::vector<std::string> surfaces; // may contain ""
    slot_value_mapping       mapping;
};

struct phrase_pools {
    std::string              function;
    std::vector<std::string> question_phrases; // may contain "" (command style)
    std::vector<std::string> action_phrases;
    std::vector<param_slot>  slots;
    std::vector<std::string> oofc_question_phrases;
};

// Product of all pool sizes; zero when any pool is empty. Throws a
// validation error on (absurd) overflow.
uint64_t pool_capacity(const phrase_pools & pools);

phrase_pools load_pools_file(const std::filesystem::path & path);

// Pools validated against their schema, with every surface phrase
// resolved to its canonical argument value ahead of time.
class bound_pools {
  public:
    bound_pools(phrase_pools pools, const function_schema & schema);

    const phrase_pools &    pools() const { return pools_; }
    const function_schema & schema() const { return *schema_; }

    uint64_t capacity() const { return capacity_; }

    // nullopt => the parameter is omitted for this surface.
    const std::optional<std::string> & surface_value(size_t slot, size_t surface) const {
        return resolved_[slot][surface];
    }

  private:
    phrase_pools            pools_;
    const function_schema * schema_;
    uint64_t                capacity_ = 0;

    std::vector<std::vector<std::optional<std::string>>> resolved_;
};

} // namespace fcgen

#pragma once

#include "fcgen/call_expr.hpp"
#include "fcgen/phrase_pools.hpp"

#include <string_view>
#include <vector>

namespace fcgen {

// Deterministic inverse of the generation grammar: routes a generated
// question back to its gold call by longest-action-phrase match, then
// recovers arguments by scanning for mapping-table surface keys. Serves
// as ground truth for the round-trip tests and as a zero-model reference
// predictor.
class oracle_router {
  public:
    explicit oracle_router(const std::vector<const bound_pools *> & pools);

    // Throws a validation error when no action phrase matches or when two
    // functions tie on the longest matched phrase.
    call_expr route(std::string_view question) const;

  private:
    std::vector<const bound_pools *> pools_;
};

} // namespace fcgen

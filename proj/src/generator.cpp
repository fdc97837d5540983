#include "fcgen/generator.hpp"

#include "fcgen/errors.hpp"
#include "fcgen/rng.hpp"

#include <algorithm>
#include <cstdio>

namespace fcgen {

namespace {

std::string format_id(const std::string & function, uint64_t sequence) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%06llu", static_cast<unsigned long long>(sequence));
    return function + "-" + buf;
}

// question, action, then one radix per parameter slot; the question axis
// varies fastest.
std::vector<uint64_t> radices(const phrase_pools & pools) {
    std::vector<uint64_t> r;
    r.push_back(pools.question_phrases.size());
    r.push_back(pools.action_phrases.size());
    for (const auto & slot : pools.slots) {
        r.push_back(slot.surfaces.size());
    }
    return r;
}

std::vector<uint32_t> decode_rank(uint64_t rank, const std::vector<uint64_t> & radix) {
    std::vector<uint32_t> indices(radix.size());
    for (size_t i = 0; i < radix.size(); ++i) {
        indices[i] = static_cast<uint32_t>(rank % radix[i]);
        rank /= radix[i];
    }
    return indices;
}

demonstration assemble(const bound_pools & bound, const std::vector<uint32_t> & indices,
                       uint64_t sequence) {
    const phrase_pools &    pools  = bound.pools();
    const function_schema & schema = bound.schema();

    demonstration demo;
    demo.function = pools.function;
    demo.id       = format_id(pools.function, sequence);

    const std::string & question_part = pools.question_phrases[indices[0]];
    const std::string & action_part   = pools.action_phrases[indices[1]];
    demo.style = question_part.empty() ? demo_style::command : demo_style::request;

    // Ordered concatenation question-action-parameters, single-space
    // joined, empty parts dropped.
    std::string question = question_part;
    const auto append_part = [&question](const std::string & part) {
        if (part.empty()) {
            return;
        }
        if (!question.empty()) {
            question += ' ';
        }
        question += part;
    };
    append_part(action_part);

    demo.slot_choice.emplace_back("question", indices[0]);
    demo.slot_choice.emplace_back("action", indices[1]);

    demo.gold_call.token_index = schema.token.index;
    demo.gold_call.callee_name = schema.name;

    std::vector<std::pair<std::string, std::string>> args;
    for (size_t s = 0; s < pools.slots.size(); ++s) {
        const param_slot & slot    = pools.slots[s];
        const uint32_t     choice  = indices[2 + s];
        append_part(slot.surfaces[choice]);
        demo.slot_choice.emplace_back(slot.param_name, choice);
        if (const auto & value = bound.surface_value(s, choice); value.has_value()) {
            args.emplace_back(slot.param_name, *value);
        }
    }
    demo.question = std::move(question);

    // Canonical argument order is schema order regardless of slot order.
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
    demo.gold_call.args = std::move(args);
    return demo;
}

} // namespace

std::vector<demonstration> generate(const bound_pools & pools, uint64_t count, uint64_t seed) {
    const uint64_t cap = pools.capacity();
    if (count > cap) {
        throw_validation("capacity exceeded for '" + pools.pools().function + "': requested " +
                         std::to_string(count) + " demonstrations but only " +
                         std::to_string(cap) + " unique combinations exist");
    }
    const auto radix = radices(pools.pools());
    const feistel_permutation perm(cap, seed);

    std::vector<demonstration> demos;
    demos.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        demos.push_back(assemble(pools, decode_rank(perm(i), radix), i));
    }
    return demos;
}

std::vector<demonstration> generate_styled(const bound_pools & pools, uint64_t count,
                                           style_ratio ratio, uint64_t seed) {
    if (ratio.request == 0 && ratio.command == 0) {
        throw_validation("style ratio must not be 0:0");
    }
    const phrase_pools & p = pools.pools();

    std::vector<uint32_t> request_q, command_q;
    for (uint32_t i = 0; i < p.question_phrases.size(); ++i) {
        (p.question_phrases[i].empty() ? command_q : request_q).push_back(i);
    }

    const uint64_t total_parts = ratio.request + ratio.command;
    const uint64_t n_request =
        (2 * count * ratio.request + total_parts) / (2 * total_parts); // round half up
    const uint64_t n_command = count - n_request;

    auto radix = radices(p);
    uint64_t tail_capacity = 1;
    for (size_t i = 1; i < radix.size(); ++i) {
        tail_capacity *= radix[i];
    }

    const auto generate_block = [&](const std::vector<uint32_t> & q_axis, uint64_t n,
                                    const char * label, uint64_t block_seed,
                                    uint64_t first_sequence,
                                    std::vector<demonstration> & out) {
        const uint64_t sub_capacity = q_axis.size() * tail_capacity;
        if (n > sub_capacity) {
            throw_validation(std::string("style ratio unsatisfiable for '") + p.function +
                             "': requested " + std::to_string(n) + " " + label +
                             "-style demonstrations but only " + std::to_string(sub_capacity) +
                             " combinations exist");
        }
        auto sub_radix = radix;
        sub_radix[0]   = q_axis.size();
        const feistel_permutation perm(sub_capacity, block_seed);
        for (uint64_t i = 0; i < n; ++i) {
            auto indices = decode_rank(perm(i), sub_radix);
            indices[0]   = q_axis[indices[0]];
            out.push_back(assemble(pools, indices, first_sequence + i));
        }
    };

    std::vector<demonstration> demos;
    demos.reserve(count);
    generate_block(request_q, n_request, "request", derive_seed(seed, "style/request"), 0, demos);
    generate_block(command_q, n_command, "command", derive_seed(seed, "style/command"),
                   n_request, demos);
    return demos;
}

std::vector<demonstration> make_oofc(const std::vector<demonstration> & demos,
                                     const bound_pools & pools, uint64_t seed) {
    const phrase_pools & p = pools.pools();
    if (p.oofc_question_phrases.empty()) {
        throw_validation("pools for '" + p.function + "' have no out-of-logic question phrases");
    }

    rng64 rng(derive_seed(seed, "oofc"));
    std::vector<demonstration> variants;
    variants.reserve(demos.size());
    for (const auto & demo : demos) {
        if (demo.function != p.function) {
            throw_validation("demonstration '" + demo.id + "' belongs to '" + demo.function +
                             "', not to the bound pools of '" + p.function + "'");
        }
        if (demo.domain != logic_domain::in_logic) {
            throw_validation("demonstration '" + demo.id + "' is already out-of-logic");
        }
        // The action+parameter tail survives; only the question part is
        // out-of-logic.
        std::string_view tail = demo.question;
        if (demo.style == demo_style::request) {
            size_t best = std::string::npos;
            for (const auto & phrase : p.question_phrases) {
                if (phrase.empty() || phrase.size() + 1 > demo.question.size()) {
                    continue;
                }
                if (demo.question.compare(0, phrase.size(), phrase) == 0 &&
                    demo.question[phrase.size()] == ' ') {
                    if (best == std::string::npos || phrase.size() > best) {
                        best = phrase.size();
                    }
                }
            }
            if (best == std::string::npos) {
                throw_validation("question of '" + demo.id +
                                 "' does not start with any known question phrase");
            }
            tail = std::string_view(demo.question).substr(best + 1);
        }

        const auto & oofc =
            p.oofc_question_phrases[rng.below(p.oofc_question_phrases.size())];

        demonstration variant = demo;
        variant.id += "-oofc";
        variant.domain   = logic_domain::out_of_logic;
        variant.question = oofc + " " + std::string(tail);
        variant.slot_choice.clear();
        variants.push_back(std::move(variant));
    }
    return variants;
}

} // namespace fcgen

#pragma once

#include "fcgen/call_expr.hpp"
#include "fcgen/demonstration.hpp"
#include "fcgen/registry.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fcgen {

struct prediction {
    std::string demo_id;
    std::string raw_text;
};

enum class match_reason {
    ok,
    parse_failure,
    wrong_function,
    missing_required_arg,
    wrong_arg_value,
    unexpected_arg,
};

std::string_view to_string(match_reason reason);

struct match_verdict {
    bool         matched = false;
    match_reason reason  = match_reason::parse_failure;
    std::string  detail;
};

// Single-call AST match. A prediction matches gold iff the callee
// resolves to the same function (special token or plain name), every
// required argument is present with gold's value, every optional argument
// agrees with gold up to default-equivalence (an omitted optional equals
// an explicit schema default), and no argument falls outside the schema.
match_verdict match_call(const call_expr & pred, const call_expr & gold,
                         const function_schema & schema, const registry & reg);

// The six externally computed general-capability scores consumed by the
// aggregate metric.
struct benchmark_scores {
    double mmlu       = 0.0;
    double gsm8k      = 0.0;
    double arc        = 0.0;
    double hellaswag  = 0.0;
    double winogrande = 0.0;
    double truthfulqa = 0.0;

    double mean() const {
        return (mmlu + gsm8k + arc + hellaswag + winogrande + truthfulqa) / 6.0;
    }

    static benchmark_scores load_file(const std::filesystem::path & path);
};

// (acc_logic + acc_oofc + mean(six)) / 3. All inputs must be in [0, 1].
double fclaa(double acc_logic, double acc_oofc, const benchmark_scores & scores);

struct graded_demo {
    std::string   demo_id;
    logic_domain  domain = logic_domain::in_logic;
    match_verdict verdict;
};

struct eval_report {
    size_t logic_total   = 0;
    size_t logic_matched = 0;
    size_t oofc_total    = 0;
    size_t oofc_matched  = 0;

    double acc_logic = 0.0; // matched/total over the in-logic demos
    double acc_oofc  = 0.0; // matched/total over the out-of-logic demos

    std::optional<benchmark_scores> scores;
    std::optional<double>           fclaa_value;

    std::array<size_t, 6>    reason_counts{}; // indexed by match_reason
    std::vector<graded_demo> per_demo;

    void attach_scores(const benchmark_scores & s);

    nlohmann::ordered_json to_json() const;
    // Human-readable summary for standard output.
    std::string to_table() const;
};

// Grades one prediction per gold demonstration. Gold demos without a
// prediction count as parse failures; predictions for unknown ids and
// duplicate ids are errors.
eval_report grade(const std::vector<prediction> & preds,
                  const std::vector<demonstration> & gold, const registry & reg);

std::vector<prediction> read_predictions_jsonl(const std::filesystem::path & path);
void write_predictions_jsonl(const std::filesystem::path & path,
                             const std::vector<prediction> & preds);

} // namespace fcgen

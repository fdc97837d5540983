#include "fcgen/evaluator.hpp"

#include "fcgen/config.hpp"
#include "fcgen/errors.hpp"
#include "fcgen/jsonl.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

namespace fcgen {

namespace {

const function_schema * resolve_callee(const call_expr & call, const registry & reg) {
    if (call.token_index) {
        return reg.by_token_index(*call.token_index);
    }
    if (!call.callee_name.empty()) {
        return reg.find(call.callee_name);
    }
    return nullptr;
}

double round4(double x) {
    return std::round(x * 10000.0) / 10000.0;
}

void check_unit_interval(double value, const char * name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw_validation(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
    }
}

} // namespace

std::string_view to_string(match_reason reason) {
    switch (reason) {
        case match_reason::ok:                   return "ok";
        case match_reason::parse_failure:        return "parse-failure";
        case match_reason::wrong_function:       return "wrong-function";
        case match_reason::missing_required_arg: return "missing-required-arg";
        case match_reason::wrong_arg_value:      return "wrong-arg-value";
        case match_reason::unexpected_arg:       return "unexpected-arg";
    }
    return "unknown";
}

match_verdict match_call(const call_expr & pred, const call_expr & gold,
                         const function_schema & schema, const registry & reg) {
    const auto verdict = [](match_reason reason, std::string detail) {
        return match_verdict{reason == match_reason::ok, reason, std::move(detail)};
    };

    const function_schema * pred_schema = resolve_callee(pred, reg);
    if (pred_schema == nullptr || pred_schema->name != schema.name) {
        std::string callee = pred.token_index ? special_token{*pred.token_index}.surface()
                                              : pred.callee_name;
        return verdict(match_reason::wrong_function,
                       "predicted callee '" + callee + "', expected '" + schema.name + "'");
    }

    for (const auto & spec : schema.params) {
        const std::string * gold_value = gold.find_arg(spec.name);
        const std::string * pred_value = pred.find_arg(spec.name);

        if (spec.required) {
            if (pred_value == nullptr) {
                return verdict(match_reason::missing_required_arg,
                               "required argument '" + spec.name + "' is missing");
            }
            if (gold_value != nullptr && *pred_value != *gold_value) {
                return verdict(match_reason::wrong_arg_value,
                               "argument '" + spec.name + "': got \"" + *pred_value +
                                   "\", expected \"" + *gold_value + "\"");
            }
            continue;
        }

        // Default-equivalence: an absent optional argument means the
        // schema default on either side.
        const auto effective = [&spec](const std::string * explicit_value) {
            return explicit_value != nullptr ? std::optional<std::string>(*explicit_value)
                                             : spec.default_value;
        };
        const auto gold_effective = effective(gold_value);
        const auto pred_effective = effective(pred_value);
        if (gold_effective != pred_effective) {
            const auto show = [](const std::optional<std::string> & v) {
                return v ? "\"" + *v + "\"" : std::string("<absent>");
            };
            return verdict(match_reason::wrong_arg_value,
                           "argument '" + spec.name + "': got " + show(pred_effective) +
                               ", expected " + show(gold_effective));
        }
    }

    for (const auto & [name, value] : pred.args) {
        if (schema.find_param(name) == nullptr) {
            return verdict(match_reason::unexpected_arg,
                           "argument '" + name + "' is not part of the schema");
        }
    }

    return verdict(match_reason::ok, {});
}

benchmark_scores benchmark_scores::load_file(const std::filesystem::path & path) {
    const cfg::table doc = cfg::parse_file(path);
    const std::string context = path.string();
    benchmark_scores scores;
    scores.mmlu       = doc.get_number("mmlu", context);
    scores.gsm8k      = doc.get_number("gsm8k", context);
    scores.arc        = doc.get_number("arc", context);
    scores.hellaswag  = doc.get_number("hellaswag", context);
    scores.winogrande = doc.get_number("winogrande", context);
    scores.truthfulqa = doc.get_number("truthfulqa", context);
    for (const auto & [name, value] :
         std::initializer_list<std::pair<const char *, double>>{
             {"mmlu", scores.mmlu},
             {"gsm8k", scores.gsm8k},
             {"arc", scores.arc},
             {"hellaswag", scores.hellaswag},
             {"winogrande", scores.winogrande},
             {"truthfulqa", scores.truthfulqa}}) {
        check_unit_interval(value, name);
    }
    return scores;
}

double fclaa(double acc_logic, double acc_oofc, const benchmark_scores & scores) {
    check_unit_interval(acc_logic, "acc_logic");
    check_unit_interval(acc_oofc, "acc_oofc");
    check_unit_interval(scores.mmlu, "mmlu");
    check_unit_interval(scores.gsm8k, "gsm8k");
    check_unit_interval(scores.arc, "arc");
    check_unit_interval(scores.hellaswag, "hellaswag");
    check_unit_interval(scores.winogrande, "winogrande");
    check_unit_interval(scores.truthfulqa, "truthfulqa");
    return (acc_logic + acc_oofc + scores.mean()) / 3.0;
}

void eval_report::attach_scores(const benchmark_scores & s) {
    scores      = s;
    fclaa_value = fclaa(acc_logic, acc_oofc, s);
}

eval_report grade(const std::vector<prediction> & preds,
                  const std::vector<demonstration> & gold, const registry & reg) {
    std::unordered_map<std::string, const demonstration *> gold_by_id;
    for (const auto & demo : gold) {
        if (!gold_by_id.emplace(demo.id, &demo).second) {
            throw_validation("duplicate gold demonstration id '" + demo.id + "'");
        }
    }

    std::unordered_map<std::string, const prediction *> pred_by_id;
    for (const auto & pred : preds) {
        if (!gold_by_id.contains(pred.demo_id)) {
            throw_validation("prediction references unknown demonstration id '" + pred.demo_id +
                             "'");
        }
        if (!pred_by_id.emplace(pred.demo_id, &pred).second) {
            throw_validation("duplicate prediction id '" + pred.demo_id + "'");
        }
    }

    eval_report report;
    report.per_demo.reserve(gold.size());
    for (const auto & demo : gold) {
        graded_demo graded;
        graded.demo_id = demo.id;
        graded.domain  = demo.domain;

        const auto it = pred_by_id.find(demo.id);
        if (it == pred_by_id.end()) {
            graded.verdict = {false, match_reason::parse_failure, "no prediction"};
        } else {
            auto parsed = parse_call(it->second->raw_text);
            if (!parsed.ok()) {
                graded.verdict = {false, match_reason::parse_failure, parsed.error};
            } else {
                graded.verdict = match_call(*parsed.call, demo.gold_call,
                                            reg.require(demo.function), reg);
            }
        }

        report.reason_counts[static_cast<size_t>(graded.verdict.reason)]++;
        if (demo.domain == logic_domain::in_logic) {
            report.logic_total++;
            report.logic_matched += graded.verdict.matched ? 1 : 0;
        } else {
            report.oofc_total++;
            report.oofc_matched += graded.verdict.matched ? 1 : 0;
        }
        report.per_demo.push_back(std::move(graded));
    }

    report.acc_logic = report.logic_total == 0
                           ? 0.0
                           : static_cast<double>(report.logic_matched) / report.logic_total;
    report.acc_oofc = report.oofc_total == 0
                          ? 0.0
                          : static_cast<double>(report.oofc_matched) / report.oofc_total;
    return report;
}

nlohmann::ordered_json eval_report::to_json() const {
    nlohmann::ordered_json doc{
        {"acc_logic", round4(acc_logic)},
        {"acc_oofc", round4(acc_oofc)},
        {"logic", {{"matched", logic_matched}, {"total", logic_total}}},
        {"oofc", {{"matched", oofc_matched}, {"total", oofc_total}}},
    };
    if (scores) {
        doc["benchmark_scores"] = {
            {"mmlu", scores->mmlu},
            {"gsm8k", scores->gsm8k},
            {"arc", scores->arc},
            {"hellaswag", scores->hellaswag},
            {"winogrande", scores->winogrande},
            {"truthfulqa", scores->truthfulqa},
        };
    } else {
        doc["benchmark_scores"] = nullptr;
    }
    doc["fclaa"] = fclaa_value ? nlohmann::ordered_json(round4(*fclaa_value))
                               : nlohmann::ordered_json(nullptr);

    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (size_t i = 0; i < reason_counts.size(); ++i) {
        counts[std::string(to_string(static_cast<match_reason>(i)))] = reason_counts[i];
    }
    doc["reason_counts"] = std::move(counts);

    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    for (const auto & graded : per_demo) {
        nlohmann::ordered_json entry{
            {"demo_id", graded.demo_id},
            {"logic_domain", to_string(graded.domain)},
            {"matched", graded.verdict.matched},
            {"reason", to_string(graded.verdict.reason)},
        };
        if (!graded.verdict.detail.empty()) {
            entry["detail"] = graded.verdict.detail;
        }
        per.push_back(std::move(entry));
    }
    doc["per_demo"] = std::move(per);
    return doc;
}

std::string eval_report::to_table() const {
    char buf[128];
    std::string out;
    out += "metric          value\n";
    std::snprintf(buf, sizeof(buf), "acc_logic       %.4f  (%zu/%zu)\n", round4(acc_logic),
                  logic_matched, logic_total);
    out += buf;
    std::snprintf(buf, sizeof(buf), "acc_oofc        %.4f  (%zu/%zu)\n", round4(acc_oofc),
                  oofc_matched, oofc_total);
    out += buf;
    if (scores) {
        std::snprintf(buf, sizeof(buf), "benchmark_mean  %.4f\n", round4(scores->mean()));
        out += buf;
    }
    if (fclaa_value) {
        std::snprintf(buf, sizeof(buf), "fclaa           %.4f\n", round4(*fclaa_value));
        out += buf;
    }
    out += "mismatches:\n";
    for (size_t i = 1; i < reason_counts.size(); ++i) {
        if (reason_counts[i] == 0) {
            continue;
        }
        std::snprintf(buf, sizeof(buf), "  %-22s %zu\n",
                      std::string(to_string(static_cast<match_reason>(i))).c_str(),
                      reason_counts[i]);
        out += buf;
    }
    if (reason_counts[0] == logic_total + oofc_total) {
        out += "  (none)\n";
    }
    return out;
}

std::vector<prediction> read_predictions_jsonl(const std::filesystem::path & path) {
    std::vector<prediction> preds;
    for_each_jsonl(path, [&](size_t line_no, const nlohmann::json & doc) {
        if (!doc.contains("demo_id") || !doc.contains("raw_text")) {
            throw_validation(path.string() + ":" + std::to_string(line_no) +
                             ": prediction needs 'demo_id' and 'raw_text'");
        }
        preds.push_back({doc.at("demo_id").get<std::string>(),
                         doc.at("raw_text").get<std::string>()});
    });
    return preds;
}

void write_predictions_jsonl(const std::filesystem::path & path,
                             const std::vector<prediction> & preds) {
    jsonl_writer out(path);
    for (const auto & pred : preds) {
        out.write(nlohmann::ordered_json{{"demo_id", pred.demo_id}, {"raw_text", pred.raw_text}});
    }
    out.close();
}

} // namespace fcgen

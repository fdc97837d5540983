#include "fcgen/demonstration.hpp"

#include "fcgen/errors.hpp"
#include "fcgen/jsonl.hpp"

namespace fcgen {

std::string_view to_string(demo_style s) {
    return s == demo_style::request ? "request" : "command";
}

std::string_view to_string(logic_domain d) {
    return d == logic_domain::in_logic ? "in-logic" : "out-of-logic";
}

std::string_view to_string(split_tag t) {
    switch (t) {
        case split_tag::train: return "train";
        case split_tag::test:  return "test";
        case split_tag::unassigned: break;
    }
    return "unassigned";
}

demo_style parse_style(std::string_view text) {
    if (text == "request") {
        return demo_style::request;
    }
    if (text == "command") {
        return demo_style::command;
    }
    throw_validation("unknown style: '" + std::string(text) + "'");
}

logic_domain parse_logic_domain(std::string_view text) {
    if (text == "in-logic") {
        return logic_domain::in_logic;
    }
    if (text == "out-of-logic") {
        return logic_domain::out_of_logic;
    }
    throw_validation("unknown logic domain: '" + std::string(text) + "'");
}

split_tag parse_split_tag(std::string_view text) {
    if (text == "train") {
        return split_tag::train;
    }
    if (text == "test") {
        return split_tag::test;
    }
    if (text == "unassigned") {
        return split_tag::unassigned;
    }
    throw_validation("unknown split tag: '" + std::string(text) + "'");
}

nlohmann::ordered_json demo_to_json(const demonstration & demo) {
    nlohmann::ordered_json args = nlohmann::ordered_json::object();
    for (const auto & [name, value] : demo.gold_call.args) {
        args[name] = value;
    }
    return nlohmann::ordered_json{
        {"id", demo.id},
        {"function", demo.function},
        {"style", to_string(demo.style)},
        {"question", demo.question},
        {"gold", demo.gold_call.render()},
        {"args", std::move(args)},
        {"logic_domain", to_string(demo.domain)},
        {"split", to_string(demo.split)},
    };
}

demonstration demo_from_json(const nlohmann::json & doc, std::string_view where) {
    const std::string context(where);
    for (const char * key : {"id", "function", "style", "question", "gold", "args",
                             "logic_domain", "split"}) {
        if (!doc.contains(key)) {
            throw_validation(context + ": demonstration record is missing key '" +
                             std::string(key) + "'");
        }
    }
    demonstration demo;
    demo.id       = doc.at("id").get<std::string>();
    demo.function = doc.at("function").get<std::string>();
    demo.style    = parse_style(doc.at("style").get<std::string>());
    demo.question = doc.at("question").get<std::string>();
    demo.domain   = parse_logic_domain(doc.at("logic_domain").get<std::string>());
    demo.split    = parse_split_tag(doc.at("split").get<std::string>());

    const auto gold_text = doc.at("gold").get<std::string>();
    auto parsed = parse_call(gold_text);
    if (!parsed.ok()) {
        throw_validation(context + ": gold call '" + gold_text +
                         "' does not parse: " + parsed.error);
    }
    demo.gold_call = std::move(*parsed.call);
    demo.gold_call.callee_name = demo.function;

    // Cross-check the args object against the rendered gold string so a
    // hand-edited file cannot drift silently.
    const auto & args = doc.at("args");
    if (!args.is_object()) {
        throw_validation(context + ": 'args' must be an object");
    }
    std::map<std::string, std::string> declared;
    for (const auto & [key, value] : args.items()) {
        declared.emplace(key, value.get<std::string>());
    }
    if (declared != demo.gold_call.args_map()) {
        throw_validation(context + ": 'args' disagrees with the rendered gold call for id '" +
                         demo.id + "'");
    }
    return demo;
}

void write_demos_jsonl(const std::filesystem::path & path,
                       const std::vector<demonstration> & demos) {
    jsonl_writer out(path);
    for (const auto & demo : demos) {
        out.write(demo_to_json(demo));
    }
    out.close();
}

std::vector<demonstration> read_demos_jsonl(const std::filesystem::path & path) {
    std::vector<demonstration> demos;
    for_each_jsonl(path, [&](size_t line_no, const nlohmann::json & doc) {
        demos.push_back(demo_from_json(doc, path.string() + ":" + std::to_string(line_no)));
    });
    return demos;
}

} // namespace fcgen

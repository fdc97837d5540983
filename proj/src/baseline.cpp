#include "fcgen/baseline.hpp"

#include "fcgen/errors.hpp"
#include "fcgen/jsonl.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <future>

namespace fcgen {

namespace {

constexpr std::string_view kFilterSystemPrompt =
    "You are a strict classifier. Decide whether the user request below can be "
    "fulfilled by calling the described function. Reply with exactly one word: YES or NO.";

constexpr std::string_view kGenerateSystemPrompt =
    "You translate a user request into exactly one function call. Reply with only the "
    "call, written as TOKEN(name=\"value\", ...) where TOKEN is the invocation token "
    "given below. Use the parameter names and canonical values from the function "
    "description and nothing else.";

std::string chat_body(const endpoint_config & cfg, std::string_view system_prompt,
                      const std::string & user_prompt) {
    const nlohmann::ordered_json body{
        {"model", cfg.model_name},
        {"messages",
         {{{"role", "system"}, {"content", std::string(system_prompt)}},
          {{"role", "user"}, {"content", user_prompt}}}},
        {"temperature", 0},
    };
    return body.dump();
}

std::string trimmed(std::string_view text) {
    size_t begin = 0;
    size_t end   = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
        --end;
    }
    return std::string(text.substr(begin, end - begin));
}

// Runs `task(i)` for every index with at most `concurrency` tasks in
// flight; results land in input order.
template <typename Fn>
std::vector<std::string> fan_out(size_t n, int concurrency, Fn task) {
    std::vector<std::string> results(n);
    const size_t wave = std::max(1, concurrency);
    for (size_t base = 0; base < n; base += wave) {
        const size_t end = std::min(n, base + wave);
        std::vector<std::future<std::string>> futures;
        futures.reserve(end - base);
        for (size_t i = base; i < end; ++i) {
            futures.push_back(std::async(std::launch::async, [&task, i] { return task(i); }));
        }
        for (size_t i = base; i < end; ++i) {
            results[i] = futures[i - base].get();
        }
    }
    return results;
}

} // namespace

http_transport::http_transport(endpoint_config cfg) : cfg_(std::move(cfg)) {
    if (cfg_.timeout_seconds <= 0) {
        throw_validation("endpoint timeout must be positive");
    }
    if (cfg_.max_retries < 0) {
        throw_validation("endpoint max_retries must be >= 0");
    }
}

std::string http_transport::post_chat(const std::string & request_body) {
    std::string last_error;
    for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
        httplib::Client client(cfg_.base_url);
        client.set_connection_timeout(std::chrono::duration<double>(cfg_.timeout_seconds));
        client.set_read_timeout(std::chrono::duration<double>(cfg_.timeout_seconds));

        httplib::Headers headers;
        if (const char * token = std::getenv(cfg_.auth_token_env.c_str());
            token != nullptr && *token != '\0') {
            headers.emplace("Authorization", std::string("Bearer ") + token);
        }

        auto res = client.Post(cfg_.chat_path, headers, request_body, "application/json");
        if (res && res->status >= 200 && res->status < 300) {
            return res->body;
        }
        if (res) {
            last_error = "HTTP " + std::to_string(res->status);
            // Client errors other than rate limiting will not heal on retry.
            if (res->status >= 400 && res->status < 500 && res->status != 429) {
                break;
            }
        } else {
            last_error = httplib::to_string(res.error());
        }
    }
    throw_transport("chat endpoint " + cfg_.base_url + cfg_.chat_path +
                    " failed after retries: " + last_error);
}

fixture_transport fixture_transport::load_file(const std::filesystem::path & path) {
    fixture_transport tx;
    for_each_jsonl(path, [&](size_t line_no, const nlohmann::json & doc) {
        if (!doc.contains("request") || !doc.contains("response")) {
            throw_validation(path.string() + ":" + std::to_string(line_no) +
                             ": fixture line needs 'request' and 'response'");
        }
        tx.add(doc.at("request").get<std::string>(), doc.at("response").get<std::string>());
    });
    return tx;
}

void fixture_transport::save_file(const std::filesystem::path & path) const {
    jsonl_writer out(path);
    for (const auto & [request, response] : ordered_) {
        out.write(nlohmann::ordered_json{{"request", request}, {"response", response}});
    }
    out.close();
}

void fixture_transport::add(std::string request_body, std::string response_body) {
    ordered_.emplace_back(request_body, response_body);
    by_request_[std::move(request_body)] = std::move(response_body);
}

std::string fixture_transport::post_chat(const std::string & request_body) {
    std::lock_guard lock(mutex_);
    const auto it = by_request_.find(request_body);
    if (it == by_request_.end()) {
        throw_transport("no recorded fixture for request: " + request_body);
    }
    ++requests_served_;
    return it->second;
}

recording_transport::recording_transport(transport & inner, std::filesystem::path out_path)
    : inner_(inner), out_path_(std::move(out_path)) {}

recording_transport::~recording_transport() {
    try {
        recorded_.save_file(out_path_);
    } catch (...) {
        // Destructor must not throw; an unwritable recording is dropped.
    }
}

std::string recording_transport::post_chat(const std::string & request_body) {
    std::string response = inner_.post_chat(request_body);
    std::lock_guard lock(mutex_);
    recorded_.add(request_body, response);
    return response;
}

std::string filter_request_body(const endpoint_config & cfg, const function_schema & schema,
                                const std::string & question) {
    const std::string user_prompt = "Function description:\n" + schema.description +
                                    "\n\nUser request: " + question +
                                    "\n\nCan this request be fulfilled by the function "
                                    "above? Reply YES or NO.";
    return chat_body(cfg, kFilterSystemPrompt, user_prompt);
}

std::string generate_request_body(const endpoint_config & cfg, const function_schema & schema,
                                  const std::string & question) {
    const std::string user_prompt = "Function description:\n" + schema.description +
                                    "\n\nInvocation token: " + schema.token.surface() +
                                    "\n\nUser request: " + question + "\n\nFunction call:";
    return chat_body(cfg, kGenerateSystemPrompt, user_prompt);
}

std::string make_chat_response(const std::string & content) {
    const nlohmann::ordered_json body{
        {"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}},
    };
    return body.dump();
}

std::string extract_chat_content(const std::string & response_body) {
    const nlohmann::json doc = nlohmann::json::parse(response_body, nullptr, false);
    if (doc.is_discarded()) {
        throw_transport("malformed response: not JSON");
    }
    if (!doc.contains("choices") || !doc.at("choices").is_array() ||
        doc.at("choices").empty()) {
        throw_transport("malformed response: missing choices");
    }
    const auto & first = doc.at("choices").at(0);
    if (!first.contains("message") || !first.at("message").contains("content") ||
        !first.at("message").at("content").is_string()) {
        throw_transport("malformed response: missing message content");
    }
    return first.at("message").at("content").get<std::string>();
}

std::vector<std::string> filter_queries(const std::vector<std::string> & questions,
                                        const function_schema & schema,
                                        const endpoint_config & cfg, transport & tx) {
    const auto answers = fan_out(questions.size(), cfg.concurrency, [&](size_t i) {
        return tx.post_chat(filter_request_body(cfg, schema, questions[i]));
    });

    std::vector<std::string> kept;
    for (size_t i = 0; i < questions.size(); ++i) {
        std::string content = trimmed(extract_chat_content(answers[i]));
        std::transform(content.begin(), content.end(), content.begin(),
                       [](unsigned char c) { return std::toupper(c); });
        if (content == "YES") {
            kept.push_back(questions[i]);
        } else if (content != "NO") {
            throw_transport("malformed response: expected YES or NO, got '" + content + "'");
        }
    }
    return kept;
}

baseline_report generate_outputs(const std::vector<std::string> & questions,
                                 const function_schema & schema, const endpoint_config & cfg,
                                 transport & tx, const oracle_router & oracle,
                                 const registry & reg) {
    const auto responses = fan_out(questions.size(), cfg.concurrency, [&](size_t i) {
        return tx.post_chat(generate_request_body(cfg, schema, questions[i]));
    });

    baseline_report report;
    report.records.reserve(questions.size());
    for (size_t i = 0; i < questions.size(); ++i) {
        baseline_record record;
        record.question         = questions[i];
        record.function         = schema.name;
        record.generated_output = extract_chat_content(responses[i]);

        const call_expr gold = oracle.route(record.question);
        auto parsed = parse_call(record.generated_output);
        if (!parsed.ok()) {
            record.verdict = {false, match_reason::parse_failure, parsed.error};
        } else {
            record.verdict = match_call(*parsed.call, gold, schema, reg);
        }
        report.correct += record.verdict.matched ? 1 : 0;
        report.records.push_back(std::move(record));
    }
    report.correct_fraction =
        questions.empty() ? 0.0 : static_cast<double>(report.correct) / questions.size();
    return report;
}

} // namespace fcgen

#pragma once

#include "fcgen/evaluator.hpp"
#include "fcgen/oracle.hpp"
#include "fcgen/registry.hpp"

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace fcgen {

// Reproduction of the LLM-generation baseline: an external chat-completion
// endpoint first filters a mixed question pool per function, then
// generates call outputs, which are graded post hoc against the oracle.

struct endpoint_config {
    std::string base_url        = "http://127.0.0.1:8080";
    std::string chat_path       = "/v1/chat/completions";
    std::string model_name      = "gpt-3.5-turbo";
    std::string auth_token_env  = "FCGEN_API_TOKEN";
    double      timeout_seconds = 30.0;
    int         max_retries     = 2;
    int         concurrency     = 4;
};

// Every network interaction goes through this seam; the test suite and
// the acceptance run use recorded fixtures exclusively.
class transport {
  public:
    virtual ~transport() = default;

    // Posts one chat-completion request body and returns the response
    // body. Throws a transport error on failure. Must be callable from
    // multiple threads.
    virtual std::string post_chat(const std::string & request_body) = 0;
};

// Live HTTP transport with bounded retries; each attempt reposts the
// identical body. Bearer auth comes from the configured environment
// variable when it is set.
class http_transport : public transport {
  public:
    explicit http_transport(endpoint_config cfg);
    std::string post_chat(const std::string & request_body) override;

  private:
    endpoint_config cfg_;
};

// Replays request->response pairs recorded on disk (JSON Lines with
// `request` and `response` string fields), matching on the exact request
// body.
class fixture_transport : public transport {
  public:
    fixture_transport() = default;
    fixture_transport(fixture_transport && other) noexcept
        : by_request_(std::move(other.by_request_)),
          ordered_(std::move(other.ordered_)),
          requests_served_(other.requests_served_) {}
    fixture_transport & operator=(fixture_transport && other) noexcept {
        by_request_      = std::move(other.by_request_);
        ordered_         = std::move(other.ordered_);
        requests_served_ = other.requests_served_;
        return *this;
    }

    static fixture_transport load_file(const std::filesystem::path & path);
    void save_file(const std::filesystem::path & path) const;

    void add(std::string request_body, std::string response_body);

    std::string post_chat(const std::string & request_body) override;

    size_t request_count() const { return requests_served_; }

  private:
    std::unordered_map<std::string, std::string>     by_request_;
    std::vector<std::pair<std::string, std::string>> ordered_;
    size_t                                           requests_served_ = 0;
    std::mutex                                       mutex_;
};

// Tees every request/response pair through to a fixture file, so a live
// session can be replayed offline later.
class recording_transport : public transport {
  public:
    recording_transport(transport & inner, std::filesystem::path out_path);
    ~recording_transport();

    std::string post_chat(const std::string & request_body) override;

  private:
    transport &           inner_;
    std::filesystem::path out_path_;
    fixture_transport     recorded_;
    std::mutex            mutex_;
};

// Frozen prompt builders; fixtures key on the exact bodies these produce.
std::string filter_request_body(const endpoint_config & cfg, const function_schema & schema,
                                const std::string & question);
std::string generate_request_body(const endpoint_config & cfg, const function_schema & schema,
                                  const std::string & question);
// Builds a chat-completion response body carrying `content` (used to
// author fixtures).
std::string make_chat_response(const std::string & content);
// choices[0].message.content of a response body; throws a transport error
// on malformed payloads.
std::string extract_chat_content(const std::string & response_body);

// Keeps the questions the endpoint judged answerable by the schema
// (strict YES/NO protocol). Order-preserving, bounded-parallel fan-out.
std::vector<std::string> filter_queries(const std::vector<std::string> & questions,
                                        const function_schema & schema,
                                        const endpoint_config & cfg, transport & tx);

struct baseline_record {
    std::string   question;
    std::string   generated_output;
    std::string   function;
    match_verdict verdict; // post-hoc oracle grading
};

struct baseline_report {
    std::vector<baseline_record> records;
    size_t                       correct          = 0;
    double                       correct_fraction = 0.0;
};

// One generated output per question, each graded immediately against the
// oracle's gold call.
baseline_report generate_outputs(const std::vector<std::string> & questions,
                                 const function_schema & schema, const endpoint_config & cfg,
                                 transport & tx, const oracle_router & oracle,
                                 const registry & reg);

} // namespace fcgen

#pragma once

#include "fcgen/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

namespace fcgen {

// JSON Lines helpers. Readers report the offending line on parse errors;
// writers emit one dump()ed document plus '\n' per record so identical
// inputs always produce byte-identical files.

inline void for_each_jsonl(const std::filesystem::path & path,
                           const std::function<void(size_t line_no, const nlohmann::json &)> & fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_io("cannot open file: " + path.string());
    }
    std::string line;
    size_t      line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
        if (doc.is_discarded()) {
            throw_parse(path.string() + ":" + std::to_string(line_no) + ": malformed JSON line");
        }
        fn(line_no, doc);
    }
}

class jsonl_writer {
  public:
    explicit jsonl_writer(const std::filesystem::path & path)
        : path_(path.string()), out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) {
            throw_io("cannot open file for writing: " + path_);
        }
    }

    void write(const nlohmann::ordered_json & doc) {
        out_ << doc.dump() << '\n';
        if (!out_) {
            throw_io("write failed: " + path_);
        }
    }

    void close() {
        out_.close();
        if (out_.fail()) {
            throw_io("write failed: " + path_);
        }
    }

  private:
    std::string   path_;
    std::ofstream out_;
};

inline std::string read_text_file(const std::filesystem::path & path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_io("cannot open file: " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text_file(const std::filesystem::path & path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw_io("cannot open file for writing: " + path.string());
    }
    out << content;
    if (!out) {
        throw_io("write failed: " + path.string());
    }
}

} // namespace fcgen

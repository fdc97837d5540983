#pragma once

#include <stdexcept>
#include <string>

namespace fcgen {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// validation/parse -> 1, io -> 2, transport -> 3.
enum class error_kind {
    validation,
    parse,
    io,
    transport,
};

class error : public std::runtime_error {
  public:
    error(error_kind kind, const std::string & message)
        : std::runtime_error(message), kind_(kind) {}

    error_kind kind() const noexcept { return kind_; }

  private:
    error_kind kind_;
};

[[noreturn]] inline void throw_validation(const std::string & message) {
    throw error(error_kind::validation, message);
}

[[noreturn]] inline void throw_parse(const std::string & message) {
    throw error(error_kind::parse, message);
}

[[noreturn]] inline void throw_io(const std::string & message) {
    throw error(error_kind::io, message);
}

[[noreturn]] inline void throw_transport(const std::string & message) {
    throw error(error_kind::transport, message);
}

} // namespace fcgen

#pragma once

#include <stdexcept>
#include <string>

namespace solarpump {

enum class ErrorKind {
    invalid_input,
    degenerate_system,
    unsupported,
    not_settled,
    solver_failure,
    undefined_efficiency,
    undefined_direction,
    invalid_duty,
    singular_linearization,
    config_error,
    io_error,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_input: return "invalid-input";
        case ErrorKind::degenerate_system: return "degenerate-system";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::not_settled: return "not-settled";
        case ErrorKind::solver_failure: return "solver-failure";
        case ErrorKind::undefined_efficiency: return "undefined-efficiency";
        case ErrorKind::undefined_direction: return "undefined-direction";
        case ErrorKind::invalid_duty: return "invalid-duty";
        case ErrorKind::singular_linearization: return "singular-linearization";
        case ErrorKind::config_error: return "config-error";
        case ErrorKind::io_error: return "io-error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace solarpump

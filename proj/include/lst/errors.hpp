#pragma once

#include <stdexcept>
#include <string>

namespace lst {

// Error taxonomy shared across the library. The CLI maps each kind to a
// distinct exit code (config=2, data=3, numeric=4).
enum class ErrorKind {
    kConfig,      // bad configuration files / option combinations
    kValidation,  // precondition violated on an operation input
    kData,        // malformed or inconsistent input data
    kNumeric,     // singular designs, coverage gaps, degenerate statistics
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline Error config_error(const std::string& msg) { return Error(ErrorKind::kConfig, msg); }
inline Error validation_error(const std::string& msg) { return Error(ErrorKind::kValidation, msg); }
inline Error data_error(const std::string& msg) { return Error(ErrorKind::kData, msg); }
inline Error numeric_error(const std::string& msg) { return Error(ErrorKind::kNumeric, msg); }

}  // namespace lst

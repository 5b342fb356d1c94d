#pragma once

#include <stdexcept>
#include <string>

namespace simpar {

// Error categories map onto CLI exit codes: config -> 1, data -> 2, service -> 3.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ServiceError : std::runtime_error {
    explicit ServiceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace simpar

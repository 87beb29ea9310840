#pragma once

#include <stdexcept>
#include <string>

namespace freshtab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// First violated invariant, by name, when a config or artifact fails checks.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NetworkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HttpError : NetworkError {
    HttpError(int status_code, const std::string& what)
        : NetworkError(what), status(status_code) {}
    int status;
};

struct MalformedResponseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PageMissingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A metric or statistic was asked for on input it is not defined for
// (fewer than two insights, zero variance, ...).
struct UndefinedInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace freshtab

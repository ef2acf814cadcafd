#pragma once

#include <stdexcept>
#include <string>

namespace radstruct {

// Bad configuration: unknown versions, unresolvable assets, invalid flags.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures. The message always names the path and the cause.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed corpus or results data. The message names the offending line.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Network-level failure talking to the completion server. Distinct from the
// formatting-error taxonomy: transport faults are retried, never classified.
class TransportError : public std::runtime_error {
public:
    enum class Kind { ConnectionRefused, Timeout, HttpStatus, MalformedBody };

    TransportError(Kind kind, const std::string& what, int http_status = 0)
        : std::runtime_error(what), kind_(kind), http_status_(http_status) {}

    Kind kind() const { return kind_; }
    int http_status() const { return http_status_; }

private:
    Kind kind_;
    int http_status_;
};

}  // namespace radstruct

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wikinav {

// Invalid configuration or usage. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid or inconsistent input data. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse failure carrying the 1-based source line number.
class ParseError : public DataError {
public:
    ParseError(const std::string& msg, std::size_t line)
        : DataError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace wikinav

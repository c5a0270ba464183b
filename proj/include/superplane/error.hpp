#pragma once

#include <stdexcept>
#include <string>

namespace superplane {

// Base class for every error raised by the library. The kind lets the CLI map
// failures onto exit codes without string matching.
class Error : public std::runtime_error {
public:
    enum class Kind { Dimension, Config, Numeric, Usage, Parse, Structural };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error(Kind::Dimension, w) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(Kind::Config, w) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& w) : Error(Kind::Numeric, w) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& w) : Error(Kind::Usage, w) {}
};

struct ParseError : Error {
    ParseError(const std::string& w, int line = 0)
        : Error(Kind::Parse, line > 0 ? "line " + std::to_string(line) + ": " + w : w), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct StructuralError : Error {
    explicit StructuralError(const std::string& w) : Error(Kind::Structural, w) {}
};

}  // namespace superplane

#pragma once

#include <stdexcept>
#include <string>

namespace flawlens {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An error tied to a location in a text input (MiniOO source or SOD script).
class PositionedError : public Error {
public:
    PositionedError(std::string file, int line, int column, const std::string& message)
        : Error(format(file, line, column, message)),
          file_(std::move(file)),
          line_(line),
          column_(column),
          detail_(message) {}

    const std::string& file() const noexcept { return file_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    static std::string format(const std::string& file, int line, int column,
                              const std::string& message) {
        std::string prefix = file.empty() ? std::string("<input>") : file;
        return prefix + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
               message;
    }

    std::string file_;
    int line_;
    int column_;
    std::string detail_;
};

class LexError : public PositionedError {
public:
    using PositionedError::PositionedError;
};

class ParseError : public PositionedError {
public:
    using PositionedError::PositionedError;
};

/// Input file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Structural problem in a design model (dangling ids, duplicates, cycles).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Facts file does not match the schema.
class FactsError : public Error {
public:
    using Error::Error;
};

class MetricError : public Error {
public:
    using Error::Error;
};

/// Statistical filter applied to a table too small to carry the statistic.
class FilterError : public Error {
public:
    using Error::Error;
};

/// Ill-formed filter parameters (k = 0, percentage out of range, a >= b, ...).
class SpecError : public Error {
public:
    using Error::Error;
};

/// Strategy mixes class-level and method-level metrics.
class StrategyTypeError : public Error {
public:
    using Error::Error;
};

/// Unknown metric, filter, flaw or strategy name.
class NameError : public Error {
public:
    using Error::Error;
};

/// Flaw exists in the registry but has no detection strategy.
class NoStrategyError : public Error {
public:
    using Error::Error;
};

class TuneError : public Error {
public:
    using Error::Error;
};

}  // namespace flawlens

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace effidx {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Dates not strictly increasing.
class OrderingError : public ParseError {
public:
    using ParseError::ParseError;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Zero variance, constant path or similar: the statistic is undefined.
class DegenerateSeriesError : public Error {
public:
    using Error::Error;
};

class DegenerateSpectrumError : public Error {
public:
    using Error::Error;
};

class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// An estimator failure inside the per-series pipeline, tagged with the ticker.
class AnalysisError : public Error {
public:
    AnalysisError(std::string ticker, const std::string& what)
        : Error(ticker + ": " + what), ticker_(std::move(ticker)) {}
    [[nodiscard]] const std::string& ticker() const noexcept { return ticker_; }

private:
    std::string ticker_;
};

}  // namespace effidx

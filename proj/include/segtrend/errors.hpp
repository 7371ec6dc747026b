#pragma once

#include <stdexcept>
#include <string>

namespace segtrend {

// Error taxonomy follows the CLI exit-code contract: data errors map to
// exit 1, fit errors to exit 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

// --- data side ---

class ParseError : public DataError {
public:
    ParseError(const std::string& msg, int line)
        : DataError("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class DateOrderError : public DataError {
public:
    using DataError::DataError;
};

class SchemaError : public DataError {
public:
    using DataError::DataError;
};

class GapError : public DataError {
public:
    using DataError::DataError;
};

class MissingPopulation : public DataError {
public:
    using DataError::DataError;
};

class ThresholdNotReached : public DataError {
public:
    using DataError::DataError;
};

class NonPositiveValue : public DataError {
public:
    using DataError::DataError;
};

class FetchError : public DataError {
public:
    using DataError::DataError;
};

// --- fit side ---

class InvalidBreakpoints : public FitError {
public:
    using FitError::FitError;
};

class BreakOutOfRange : public FitError {
public:
    using FitError::FitError;
};

class SingularDesign : public FitError {
public:
    using FitError::FitError;
};

class TooManyBreaks : public FitError {
public:
    using FitError::FitError;
};

class DegenerateSlopeChange : public FitError {
public:
    using FitError::FitError;
};

class BreakEscaped : public FitError {
public:
    using FitError::FitError;
};

class BreaksCollided : public FitError {
public:
    using FitError::FitError;
};

class InvalidWeights : public FitError {
public:
    using FitError::FitError;
};

}  // namespace segtrend

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace covering {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A positive integer with a prime factor other than 2, 3, 5.
struct NotSmoothError : Error {
    std::uint64_t n;
    explicit NotSmoothError(std::uint64_t n, const std::string& where = "")
        : Error(where.empty() ? std::to_string(n) + " is not 5-smooth"
                              : where + ": " + std::to_string(n) + " is not 5-smooth"),
          n(n) {}
};

struct NonCoprimePartsError : Error {
    using Error::Error;
};

struct SyntaxError : Error {
    using Error::Error;
};

struct DigitOutOfRangeError : SyntaxError {
    using SyntaxError::SyntaxError;
};

struct WidthExceedsContextError : SyntaxError {
    using SyntaxError::SyntaxError;
};

struct AllStarError : SyntaxError {
    using SyntaxError::SyntaxError;
};

struct ContextMismatchError : Error {
    using Error::Error;
};

struct HeaderMissingError : Error {
    using Error::Error;
};

struct ModulusNotDividingLError : Error {
    using Error::Error;
};

struct DomainTooLargeError : Error {
    using Error::Error;
};

struct InvalidProblemError : Error {
    using Error::Error;
};

struct TooLargeForOracleError : Error {
    using Error::Error;
};

struct RequiresThreeEvenModuliError : Error {
    using Error::Error;
};

struct UnknownIdError : Error {
    using Error::Error;
};

struct NotTranscribedError : Error {
    using Error::Error;
};

struct EvenDError : Error {
    using Error::Error;
};

}  // namespace covering

#pragma once

#include <stdexcept>
#include <string>

namespace rur {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// fields
struct NotInvertible : Error {
    using Error::Error;
};
struct ModulusMismatch : Error {
    using Error::Error;
};
struct NonCoprimeModuli : Error {
    using Error::Error;
};

// upoly
struct ZeroGcd : Error {
    using Error::Error;
};
struct NotDivisible : Error {
    using Error::Error;
};
struct NotInvertibleModF : Error {
    using Error::Error;
};
struct UnsupportedCharacteristic : Error {
    using Error::Error;
};

// mpoly
struct ExponentOverflow : Error {
    using Error::Error;
};
struct ZeroPolynomial : Error {
    using Error::Error;
};
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

// groebner
struct NotZeroDimensional : Error {
    using Error::Error;
};
struct ResourceExceeded : Error {
    using Error::Error;
};

// fglm / bivar / rur
struct InternalInvariantViolation : Error {
    using Error::Error;
};
struct NonSeparatingEvidence : Error {
    using Error::Error;
};
struct StrategyExhausted : Error {
    using Error::Error;
};

// oracle
struct BudgetExceeded : Error {
    using Error::Error;
};
struct NonSplitMinimalPolynomial : Error {
    using Error::Error;
};

// modular
struct BadPrime : Error {
    using Error::Error;
};
struct VerificationRefuted : Error {
    using Error::Error;
};

}  // namespace rur

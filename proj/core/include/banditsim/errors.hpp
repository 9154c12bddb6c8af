#pragma once

#include <stdexcept>

namespace banditsim {

// Base class of all recoverable library errors. Precondition violations
// (caller bugs) throw std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The evaluation budget n is too small for the requested strategy.
class BudgetTooSmall : public Error {
public:
    using Error::Error;
};

// Every arm is interchangeable (all means tie), so no gap contributes and
// the hardness measures are undefined.
class InfeasibleComplexity : public Error {
public:
    using Error::Error;
};

// The outcome tree of an exact enumeration would exceed the supported size.
class EnumerationTooLarge : public Error {
public:
    using Error::Error;
};

// An experiment configuration failed to parse or violates an invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace banditsim

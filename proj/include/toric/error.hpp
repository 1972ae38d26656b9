#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Bad input: malformed fans, wrong vector lengths, unparsable arguments.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A precondition on the mathematical input failed (fan not smooth, divisor not nef, ...).
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The engine contradicted itself. Always a bug or a corrupted input.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace toric

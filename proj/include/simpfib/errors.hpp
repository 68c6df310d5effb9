#pragma once

#include <stdexcept>
#include <string>

namespace simpfib {

/// Raised for malformed or inconsistent user input (files, identifiers,
/// arguments). The CLI maps it to exit code 3.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text that is not well-formed SSX/CAT: bad JSON, missing or mistyped fields.
class ParseError : public InputError {
public:
    using InputError::InputError;
};

/// Well-formed data that violates a structural invariant (simplicial
/// identities, face degrees, functoriality, ...).
class ValidationError : public InputError {
public:
    using InputError::InputError;
};

}  // namespace simpfib

#pragma once

#include <stdexcept>
#include <string>

namespace rotbeta {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (element expressions, parameter files).
struct parse_error : error {
    parse_error(const std::string& msg, std::size_t pos)
        : error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Operation on values from incompatible fields, division by zero, etc.
struct domain_error : error {
    using error::error;
};

// A configured iteration/state cap was exhausted before a fixpoint.
struct cap_exceeded : error {
    using error::error;
};

// A decision could not be made at the configured precision.
struct precision_error : error {
    using error::error;
};

// Internal consistency violation: indicates an exactness bug or an
// operation invoked on data that does not satisfy its preconditions
// (e.g. graph construction over a non-stabilized segment closure).
struct structural_error : error {
    using error::error;
};

} // namespace rotbeta

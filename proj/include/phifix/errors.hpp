#pragma once

#include <stdexcept>
#include <string>

namespace phifix {

// Scenario or space construction rejected (unbounded carrier, bad step,
// invalid metric table, nonnegative-phi violation at load, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An explicit-table metric was queried with a point outside its finite carrier.
struct TableMiss : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A circle/disc/certification was requested with a center not in the carrier.
struct CenterNotInSpace : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic left the evaluable domain: sqrt of a negative real, division by
// zero, or a non-finite result.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A complex value appeared where a real one is required (guards, phi values,
// images of a real-line self-map).
struct KindMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// phi evaluated below zero somewhere on the carrier; phi maps into [0, inf).
struct NegativePhi : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Contraction constant outside the open admissible interval of its kind.
struct KOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace phifix

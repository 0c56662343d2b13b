#pragma once

#include <stdexcept>

namespace semilab {

// Thrown on malformed generator input (empty, non-positive, or past the
// 2^31 overflow guard).
struct InvalidGenerators : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an operation requires gcd(generators) = 1 and it is not.
struct NotCofinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The adaptive sampler hit its truncation cap without certifying the
// Frobenius number.
struct SamplerDidNotConverge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exact-mode enumeration would exceed the caller's work budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal consistency failure: a computed record violates one of its own
// structural invariants. Always a bug, never a user error.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace semilab

#pragma once

#include <stdexcept>
#include <string>

namespace tdlc {

// Raised when a result is not determined by the significant digits carried.
// Recoverable by restarting at a higher precision budget.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a bounded search or chain did not certify a limit within budget.
struct UndecidedAtBudget : std::runtime_error {
    explicit UndecidedAtBudget(const std::string& what) : std::runtime_error(what) {}
};

// Invalid input (bad spec file, mismatched primes, non-invertible matrix, ...).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant that must hold by construction failed; never recoverable.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

} // namespace tdlc

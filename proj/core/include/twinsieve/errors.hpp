#pragma once

#include <stdexcept>
#include <string>

namespace twinsieve {

/// Argument outside the mathematical domain of an operation (p < 5, m = 0,
/// a half-integer passed to nearest_int, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation would exceed a configured size guard (sieve ceiling,
/// residue-set materialization limit, ...).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace twinsieve

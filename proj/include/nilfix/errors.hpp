#pragma once

#include <stdexcept>
#include <string>

namespace nilfix {

/// Malformed or inconsistent inputs: dimension mismatches, broken
/// cross-references, invariant violations detected at construction.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A curve that must isolate a zero set passes too close to a zero
/// (modulus floor violated), or a trajectory left the domain where a
/// boundary evaluation was required.
class BoundaryZeroError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A refinement, subdivision or step budget ran out before every cell
/// or sample was certified.  Uncertified work is reported, not dropped.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A certificate could not be produced, or two independent computation
/// routes disagreed.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nilfix

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tatecup {

/// Malformed input: bad group tables, schema violations, failed resolution checks.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction would exceed the configured size budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request outside the computed degree range.
class DegreeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// An internal consistency check failed. Always a bug, never a user error.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void check_internal(bool ok, const std::string& what) {
    if (!ok) throw InternalError(what);
}

}  // namespace detail

/// Tunable limits shared by the constructions.
struct Limits {
    /// Largest number of expanded integer columns any single module may have.
    std::size_t max_zrank = 50000;
    /// Largest group order produced by permutation closure.
    std::size_t max_group_order = 5040;
    /// Groups up to this order get an exhaustive associativity check.
    std::size_t exhaustive_check_order = 128;
    /// Sparse elimination switches to dense storage above this fill ratio.
    double dense_fill_threshold = 0.25;
};

inline Limits& default_limits() {
    static Limits limits;
    return limits;
}

}  // namespace tatecup

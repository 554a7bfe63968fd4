#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace om {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when a mathematical precondition is violated (singular basis,
/// reducible minimal polynomial, non-squarefree input, ...). The CLI maps
/// these to exit code 2.
struct math_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw math_error("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// Floor of a rational as an exact integer.
Int rat_floor(const Rat& q);

std::string int_str(const Int& n);
std::string rat_str(const Rat& q);

/// Parses "n" or "n/d" with optional sign. Throws math_error on bad input.
Rat parse_rat(const std::string& s);

} // namespace om

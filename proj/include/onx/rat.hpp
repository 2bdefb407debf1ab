#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace onx {

// Exact rational scalar. Always held in lowest terms with positive denominator;
// every quantity in the library (distances, radii, tolerances) is a Rat.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p" or "p/q" (optional leading '-', q > 0 after normalization).
// Throws invalid_input on anything else, including q == 0.
Rat rat_from_string(const std::string& s);

// Canonical form: "p" when the denominator is 1, else "p/q" in lowest terms
// with the sign on the numerator.
std::string rat_to_string(const Rat& r);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }
inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace onx

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace trustlam {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational. cpp_rational keeps the fraction normalized (lowest terms,
// positive denominator), which is exactly the invariant we need; no floating
// point is involved anywhere in the system.
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

/// Renders "a/b", or just "a" when the denominator is 1.
inline std::string rat_to_string(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

/// Parses "a", "a/b" or "-a/b". Returns nullopt on malformed input.
std::optional<Rat> rat_from_string(const std::string& s);

/// Display-only decimal rendering with the given number of digits.
std::string rat_to_decimal(const Rat& r, int digits = 6);

}  // namespace trustlam

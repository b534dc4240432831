#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace polyrad {

// All combinatorial geometry in this library runs on exact rationals so that
// vertex sets, distances and region coordinates come out as true fractions.
using Rat = mpq_class;

// Accepts "3", "-7/2", "0.25", "2.5e-3". Throws std::invalid_argument on
// anything else (including zero denominators).
Rat parse_rational(const std::string& text);

// "p/q" for non-integers, plain "p" otherwise. Round-trips through
// parse_rational exactly.
std::string rat_to_string(const Rat& q);

inline double rat_to_double(const Rat& q) { return q.get_d(); }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

std::vector<Rat> rats_from_ints(const std::vector<int>& v);

std::vector<std::string> rats_to_strings(const std::vector<Rat>& v);

// True when q has denominator 1 and fits in a long.
bool rat_is_int(const Rat& q, long* out = nullptr);

}  // namespace polyrad

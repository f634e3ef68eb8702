#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace ncsaito {

// All coefficient arithmetic in the library is exact rational arithmetic.
// There is no floating point anywhere.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// "p/q" in lowest terms, sign on the numerator; plain "p" when q = 1.
std::string rat_to_string(const Rat& r);

// Accepts "p", "-p", "p/q"; throws Error(ParseError) on malformed input.
Rat rat_from_string(const std::string& s);

}  // namespace ncsaito

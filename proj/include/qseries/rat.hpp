#pragma once
#include <gmpxx.h>
#include <string>
#include <string_view>

namespace qs {

// mpq_class keeps results canonical after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

// Accepts "p", "p/q", "-p/q" with optional surrounding blanks.
Rat parse_rat(std::string_view s);
std::string to_string(const Rat& r);

Rat rat_pow(const Rat& base, long e);
bool is_integer(const Rat& r);
long to_long(const Rat& r);  // requires an integer value that fits
long floor_div(long a, long b);
long binom2(long m);  // m(m-1)/2

} // namespace qs

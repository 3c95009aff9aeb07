#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace wallcross {

// All exact arithmetic in the library runs on GMP rationals.  Nothing here
// ever touches floating point.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline long to_long(const Rational& r) {
  return mpz_get_si(r.get_num().get_mpz_t());
}

}  // namespace wallcross

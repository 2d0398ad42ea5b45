#pragma once

// Exact arithmetic base layer: arbitrary-precision integers and rationals
// (GMP via gmpxx), plus the small formatting helpers shared by the CSV/JSON
// exporters.  All combinatorial identities in this library are checked in
// exact arithmetic; doubles appear only at the presentation layer and in the
// numeric linear algebra of the character-table solver.

#include <gmpxx.h>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace spinwalk {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: zero to negative power");
    return Rat(1) / rat_pow(base, -e);
  }
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(),
             static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(),
             static_cast<unsigned long>(e));
  r.canonicalize();
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// n^{falling m} = n (n-1) ... (n-m+1)
inline Int falling_factorial(long n, unsigned long m) {
  Int r(1);
  for (unsigned long i = 0; i < m; ++i) r *= Int(n - static_cast<long>(i));
  return r;
}

// "p" for integers, otherwise "p/q".
inline std::string rat_str(const Rat& x) { return x.get_str(); }

// Fixed 12-significant-digit float formatting used for all emitted decimals,
// so repeated runs produce byte-identical files.
inline std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

inline std::string fmt12(const Rat& x) { return fmt12(x.get_d()); }

// Parse "p/q" or "p" (exact).
inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace spinwalk

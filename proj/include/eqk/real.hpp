#ifndef EQK_REAL_HPP
#define EQK_REAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdlib>
#include <string>

namespace eqk {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Variable-precision float; default precision is set once from
// EQK_PRECISION_BITS (>= 170 bits, i.e. >= 50 significant decimal digits).
using Real = boost::multiprecision::mpfr_float;

inline unsigned precision_bits() {
  static const unsigned bits = [] {
    unsigned b = 170;
    if (const char* env = std::getenv("EQK_PRECISION_BITS")) {
      unsigned long v = std::strtoul(env, nullptr, 10);
      if (v >= 64) b = static_cast<unsigned>(v);
    }
    // bits -> decimal digits
    Real::default_precision(static_cast<unsigned>(b * 0.30103) + 2);
    return b;
  }();
  return bits;
}

// Forces precision setup before main() in every TU that includes this header.
inline const unsigned k_precision_bits_init = precision_bits();

inline Real to_real(const Rat& q) { return Real(q); }

// A real number together with a bound on its representation error. Used only
// where non-integer exponents force inexact arithmetic; every comparison
// against one carries an explicit tolerance.
struct RealValue {
  Real value;
  Real abs_err;

  RealValue() : value(0), abs_err(0) {}
  explicit RealValue(Real v, Real err = Real(0))
      : value(std::move(v)), abs_err(std::move(err)) {}

  bool leq(const Real& rhs, const Real& tol) const {
    return value <= rhs + abs_err + tol;
  }
  bool geq(const Real& rhs, const Real& tol) const {
    return value >= rhs - abs_err - tol;
  }
};

inline Int binomial(long long n, long long k) {
  if (k < 0 || k > n) return Int(0);
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

// q^e for integer e (e may be negative when q != 0).
inline Rat pow_rat(const Rat& q, long long e) {
  if (e < 0) return Rat(1) / pow_rat(q, -e);
  Rat r = 1;
  Rat base = q;
  unsigned long long n = static_cast<unsigned long long>(e);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

inline Int pow_int(Int base, unsigned long long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Rising factorial x(x+1)...(x+r-1).
inline Rat rising_factorial(const Rat& x, unsigned r) {
  Rat prod = 1;
  for (unsigned i = 0; i < r; ++i) prod *= x + i;
  return prod;
}

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

}  // namespace eqk

#endif  // EQK_REAL_HPP

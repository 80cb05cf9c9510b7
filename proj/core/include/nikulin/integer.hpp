#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nikulin {

/// Arbitrary-precision integer used for every exact quantity in the library.
using Integer = mpz_class;

/// Thrown when an input violates the contract of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by the fixed-width kernels when a value leaves the int64 range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Least non-negative residue of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::optional<int64_t> to_int64(const Integer& a) {
  if (!mpz_fits_slong_p(a.get_mpz_t())) return std::nullopt;
  return static_cast<int64_t>(a.get_si());
}

inline int64_t to_int64_or_throw(const Integer& a) {
  auto v = to_int64(a);
  if (!v) throw OverflowError("integer " + a.get_str() + " does not fit in 64 bits");
  return *v;
}

inline std::string to_string(const Integer& a) { return a.get_str(); }

// Checked fixed-width arithmetic for the hot loops (orbit BFS, enumeration).
// Every operation either returns the exact result or throws.
namespace checked {

inline int64_t add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 addition overflow");
  return r;
}

inline int64_t mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiplication overflow");
  return r;
}

inline int64_t fma(int64_t acc, int64_t a, int64_t b) { return add(acc, mul(a, b)); }

}  // namespace checked

}  // namespace nikulin

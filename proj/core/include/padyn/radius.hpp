#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "padyn/errors.hpp"

namespace padyn {

// An element of |C_p^x| ∪ {0}: either radius 0 or p^e with e rational.
// Internally stores the valuation exponent q with value p^{-q}, so the norm
// of a number with valuation v is Radius::from_valuation(p, v) directly.
// All arithmetic is exact rational arithmetic on exponents; there is no
// rounding anywhere in the value group.
class Radius {
 public:
  static Radius zero(int64_t prime);
  static Radius one(int64_t prime);
  // value p^{-v}
  static Radius from_valuation(int64_t prime, const mpq_class& v);
  static Radius from_valuation(int64_t prime, long v);
  // value p^{e}
  static Radius from_power(int64_t prime, const mpq_class& e);
  static Radius from_power(int64_t prime, long e);

  int64_t prime() const noexcept { return prime_; }
  bool is_zero() const noexcept { return zero_; }

  // valuation exponent q (value = p^{-q}); throws for radius 0
  const mpq_class& vexp() const;
  // power exponent (value = p^{power}); throws for radius 0
  mpq_class power() const;

  Radius operator*(const Radius& o) const;
  Radius operator/(const Radius& o) const;  // divisor must be nonzero
  Radius pow(long k) const;                 // k may be negative (nonzero radius)
  Radius root(long k) const;                // exact k-th root, k >= 1

  bool operator==(const Radius& o) const;
  bool operator!=(const Radius& o) const { return !(*this == o); }
  bool operator<(const Radius& o) const;
  bool operator<=(const Radius& o) const;
  bool operator>(const Radius& o) const { return o < *this; }
  bool operator>=(const Radius& o) const { return o <= *this; }

  static Radius max(const Radius& a, const Radius& b) { return a < b ? b : a; }
  static Radius min(const Radius& a, const Radius& b) { return a < b ? a : b; }

  // "p^q" with q the power exponent ("3^-2", "3^1/2"); "0" for radius zero.
  std::string str() const;

 private:
  Radius(int64_t prime, bool zero, mpq_class vexp);
  void check_same_prime(const Radius& o) const;

  int64_t prime_;
  bool zero_;
  mpq_class vexp_;
};

}  // namespace padyn

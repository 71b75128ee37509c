#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "padyn/errors.hpp"
#include "padyn/radius.hpp"

namespace padyn {

inline constexpr int64_t kDefaultRelPrecision = 64;
// Rational coefficients entering polynomial work get this many extra digits
// to absorb Horner cancellation.
inline constexpr int64_t kGuardDigits = 16;

struct infinity_t {
  explicit infinity_t() = default;
};
inline constexpr infinity_t infinity{};

// An exact element of Q_p at capped relative precision.
//
// Three states:
//   Regular   — value p^v * U with p ∤ U, 0 <= U < p^N, i.e. the value is
//               known modulo p^{v+N} (absolute precision v+N).
//   NearZero  — every known digit is zero: the value is O(p^A) for a known
//               absolute precision A, indistinguishable from zero. Produced
//               only by cancellation; asking for its valuation, norm, or
//               unit reports precision exhaustion rather than guessing.
//   ExactZero — the number 0, norm 0.
//
// Values are immutable after construction; all operations are pure.
class PadicNumber {
 public:
  enum class Kind { ExactZero, NearZero, Regular };

  static PadicNumber zero(int64_t prime);
  static PadicNumber near_zero(int64_t prime, int64_t abs_precision);
  static PadicNumber from_integer(const mpz_class& n, int64_t prime,
                                  int64_t rel_precision = kDefaultRelPrecision);
  // m/n as an element of Q_p; rejects n = 0 and non-prime p.
  static PadicNumber from_rational(const mpz_class& num, const mpz_class& den,
                                   int64_t prime,
                                   int64_t rel_precision = kDefaultRelPrecision);
  static PadicNumber from_unit(int64_t prime, int64_t valuation, mpz_class unit,
                               int64_t rel_precision);

  int64_t prime() const noexcept { return prime_; }
  Kind kind() const noexcept { return kind_; }
  bool is_exact_zero() const noexcept { return kind_ == Kind::ExactZero; }
  bool is_near_zero() const noexcept { return kind_ == Kind::NearZero; }
  bool is_regular() const noexcept { return kind_ == Kind::Regular; }

  // Regular only; NearZero/ExactZero report precision/domain failures.
  int64_t valuation() const;
  const mpz_class& unit() const;
  int64_t rel_precision() const;
  // v + N for Regular, A for NearZero; ExactZero has infinite absolute
  // precision and reports a domain failure here.
  int64_t abs_precision() const;

  // p^{-valuation}; 0 for exact zero; precision failure for NearZero.
  Radius norm() const;
  // Like norm(), but NearZero yields the certified upper bound p^{-A}.
  Radius norm_upper_bound() const;

  // |x| <= p^{-a}, decided exactly or reported as undecidable.
  bool is_zero_at(int64_t abs_precision) const;

  // Least nonnegative residue modulo p^k. Requires the value to lie in Z_p
  // and to be known modulo p^k.
  mpz_class residue(int64_t k = 1) const;

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);

  // Exact multiplication by a plain integer (no precision loss beyond N).
  PadicNumber mul_integer(const mpz_class& k) const;
  // Exact scaling by p^k (valuation shift).
  PadicNumber mul_pow_p(int64_t k) const;
  // Forget digits beyond absolute precision a (a must not exceed the
  // current absolute precision).
  PadicNumber truncate_abs(int64_t a) const;

  // Digit string "d0.d1...*p^v" (little-endian unit digits); "0" for exact
  // zero; "O(p^A)" for an apparent zero.
  std::string str() const;

 private:
  PadicNumber(int64_t prime, Kind kind, int64_t val_or_absprec, mpz_class unit,
              int64_t rel_precision);

  int64_t prime_;
  Kind kind_;
  int64_t valuation_;  // valuation (Regular) or absolute precision A (NearZero)
  mpz_class unit_;
  int64_t rel_prec_;
};

// p-adic norm as a free function (same as x.norm()).
Radius norm(const PadicNumber& x);

// Square root in Q_p for odd p with deterministic sign choice: the returned
// root's unit residue mod p lies in {1, ..., (p-1)/2}. Odd valuation or a
// non-residue unit is a math-domain failure; p = 2 is unsupported.
PadicNumber sqrt(const PadicNumber& x);

// Chordal metric on P^1(Q_p), all three branches exact in the value group.
Radius chordal_distance(const PadicNumber& x, const PadicNumber& y);
Radius chordal_distance(const PadicNumber& x, infinity_t);
Radius chordal_distance(infinity_t, const PadicNumber& y);
// rho(inf, inf) = 0; the prime pins the value group of the result.
Radius chordal_distance(infinity_t, infinity_t, int64_t prime);

namespace detail {
// p^k as mpz, k >= 0.
mpz_class pow_p(int64_t p, int64_t k);
// v_p of a nonzero integer, and the cofactor n / p^v.
int64_t remove_p(mpz_class& n, int64_t p);
bool is_small_prime(int64_t p);
}  // namespace detail

}  // namespace padyn

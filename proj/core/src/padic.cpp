#include "padyn/padic.hpp"

#include <algorithm>
#include <utility>

namespace padyn {

namespace detail {

mpz_class pow_p(int64_t p, int64_t k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(k));
  return r;
}

int64_t remove_p(mpz_class& n, int64_t p) {
  mpz_class pz(static_cast<long>(p));
  mpz_class out;
  auto k = mpz_remove(out.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
  n = out;
  return static_cast<int64_t>(k);
}

bool is_small_prime(int64_t p) {
  if (p < 2) return false;
  mpz_class pz(static_cast<long>(p));
  return mpz_probab_prime_p(pz.get_mpz_t(), 32) != 0;
}

namespace {

mpz_class mod_nonneg(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class mod_inverse(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
    throw math_domain_error("no modular inverse");
  return r;
}

// Square root of the quadratic residue a modulo an odd prime p
// (Tonelli-Shanks; the p ≡ 3 mod 4 shortcut is a single powm).
mpz_class sqrt_mod_p(const mpz_class& a, int64_t p) {
  mpz_class pz(static_cast<long>(p));
  if (p % 4 == 3) {
    mpz_class e = (pz + 1) / 4, r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
    return r;
  }
  // p ≡ 1 mod 4: write p-1 = q * 2^s with q odd.
  mpz_class q = pz - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  // find a non-residue z
  mpz_class z = 2, leg, e = (pz - 1) / 2;
  for (;;) {
    mpz_powm(leg.get_mpz_t(), z.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
    if (leg == pz - 1) break;
    ++z;
  }
  mpz_class m(static_cast<long>(s)), c, t, r, tmp;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
  mpz_class e2 = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e2.get_mpz_t(), pz.get_mpz_t());
  while (t != 1) {
    // smallest i with t^{2^i} = 1
    unsigned long i = 0;
    tmp = t;
    while (tmp != 1) {
      tmp = mod_nonneg(tmp * tmp, pz);
      ++i;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < mpz_get_ui(m.get_mpz_t()); ++j)
      b = mod_nonneg(b * b, pz);
    m = static_cast<long>(i);
    c = mod_nonneg(b * b, pz);
    t = mod_nonneg(t * c, pz);
    r = mod_nonneg(r * b, pz);
  }
  return r;
}

}  // namespace
}  // namespace detail

using detail::mod_inverse;
using detail::mod_nonneg;
using detail::pow_p;
using detail::remove_p;

PadicNumber::PadicNumber(int64_t prime, Kind kind, int64_t val_or_absprec,
                         mpz_class unit, int64_t rel_precision)
    : prime_(prime),
      kind_(kind),
      valuation_(val_or_absprec),
      unit_(std::move(unit)),
      rel_prec_(rel_precision) {}

PadicNumber PadicNumber::zero(int64_t prime) {
  if (!detail::is_small_prime(prime)) throw math_domain_error("p must be prime");
  return PadicNumber(prime, Kind::ExactZero, 0, mpz_class(0), 0);
}

PadicNumber PadicNumber::near_zero(int64_t prime, int64_t abs_precision) {
  return PadicNumber(prime, Kind::NearZero, abs_precision, mpz_class(0), 0);
}

PadicNumber PadicNumber::from_unit(int64_t prime, int64_t valuation,
                                   mpz_class unit, int64_t rel_precision) {
  if (!detail::is_small_prime(prime)) throw math_domain_error("p must be prime");
  if (rel_precision < 1) throw math_domain_error("relative precision must be >= 1");
  mpz_class m = pow_p(prime, rel_precision);
  unit = mod_nonneg(unit, m);
  if (unit == 0 || mpz_divisible_ui_p(unit.get_mpz_t(),
                                      static_cast<unsigned long>(prime)))
    throw math_domain_error("unit must be coprime to p");
  return PadicNumber(prime, Kind::Regular, valuation, std::move(unit),
                     rel_precision);
}

PadicNumber PadicNumber::from_integer(const mpz_class& n, int64_t prime,
                                      int64_t rel_precision) {
  return from_rational(n, mpz_class(1), prime, rel_precision);
}

PadicNumber PadicNumber::from_rational(const mpz_class& num,
                                       const mpz_class& den, int64_t prime,
                                       int64_t rel_precision) {
  if (!detail::is_small_prime(prime)) throw math_domain_error("p must be prime");
  if (den == 0) throw math_domain_error("denominator is zero");
  if (rel_precision < 1) throw math_domain_error("relative precision must be >= 1");
  if (num == 0) return zero(prime);
  mpz_class n = num, d = den;
  int64_t v = remove_p(n, prime) - remove_p(d, prime);
  mpz_class m = pow_p(prime, rel_precision);
  mpz_class u = mod_nonneg(n * mod_inverse(mod_nonneg(d, m), m), m);
  return PadicNumber(prime, Kind::Regular, v, std::move(u), rel_precision);
}

int64_t PadicNumber::valuation() const {
  switch (kind_) {
    case Kind::Regular:
      return valuation_;
    case Kind::NearZero:
      throw precision_error(
          "valuation unknown: value is O(p^" + std::to_string(valuation_) +
          "), indistinguishable from zero at the known precision");
    default:
      throw math_domain_error("exact zero has valuation +infinity");
  }
}

const mpz_class& PadicNumber::unit() const {
  if (kind_ != Kind::Regular)
    throw precision_error("no unit part: value is zero at the known precision");
  return unit_;
}

int64_t PadicNumber::rel_precision() const {
  if (kind_ != Kind::Regular)
    throw precision_error("no relative precision: value is zero at the known precision");
  return rel_prec_;
}

int64_t PadicNumber::abs_precision() const {
  switch (kind_) {
    case Kind::Regular:
      return valuation_ + rel_prec_;
    case Kind::NearZero:
      return valuation_;
    default:
      throw math_domain_error("exact zero has infinite absolute precision");
  }
}

Radius PadicNumber::norm() const {
  switch (kind_) {
    case Kind::Regular:
      return Radius::from_valuation(prime_, static_cast<long>(valuation_));
    case Kind::ExactZero:
      return Radius::zero(prime_);
    default:
      throw precision_error(
          "norm undecidable: value is O(p^" + std::to_string(valuation_) +
          "), indistinguishable from zero at the known precision");
  }
}

Radius PadicNumber::norm_upper_bound() const {
  if (kind_ == Kind::NearZero)
    return Radius::from_valuation(prime_, static_cast<long>(valuation_));
  return norm();
}

bool PadicNumber::is_zero_at(int64_t a) const {
  switch (kind_) {
    case Kind::ExactZero:
      return true;
    case Kind::Regular:
      return valuation_ >= a;
    default:
      if (valuation_ >= a) return true;
      throw precision_error("zero test at p^-" + std::to_string(a) +
                            " undecidable: value only known to be O(p^" +
                            std::to_string(valuation_) + ")");
  }
}

mpz_class PadicNumber::residue(int64_t k) const {
  if (k < 1) throw math_domain_error("residue modulus exponent must be >= 1");
  switch (kind_) {
    case Kind::ExactZero:
      return mpz_class(0);
    case Kind::NearZero:
      if (valuation_ >= k) return mpz_class(0);
      throw precision_error("residue mod p^" + std::to_string(k) +
                            " unknown: value only known to be O(p^" +
                            std::to_string(valuation_) + ")");
    default:
      break;
  }
  if (valuation_ < 0)
    throw math_domain_error("residue requested for a value outside Z_p (valuation " +
                            std::to_string(valuation_) + ")");
  if (valuation_ >= k) return mpz_class(0);
  if (valuation_ + rel_prec_ < k)
    throw precision_error("residue mod p^" + std::to_string(k) +
                          " needs absolute precision " + std::to_string(k) +
                          ", have " + std::to_string(valuation_ + rel_prec_));
  return mod_nonneg(unit_ * pow_p(prime_, valuation_), pow_p(prime_, k));
}

PadicNumber PadicNumber::operator-() const {
  if (kind_ != Kind::Regular) return *this;
  mpz_class m = pow_p(prime_, rel_prec_);
  return PadicNumber(prime_, Kind::Regular, valuation_, mod_nonneg(-unit_, m),
                     rel_prec_);
}

namespace {

void check_primes(const PadicNumber& a, const PadicNumber& b) {
  if (a.prime() != b.prime())
    throw math_domain_error("operands have different primes");
}

}  // namespace

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  check_primes(a, b);
  const int64_t p = a.prime();
  using K = PadicNumber::Kind;
  if (a.kind() == K::ExactZero) return b;
  if (b.kind() == K::ExactZero) return a;
  if (a.kind() == K::NearZero && b.kind() == K::NearZero)
    return PadicNumber::near_zero(p, std::min(a.abs_precision(), b.abs_precision()));
  if (a.kind() == K::NearZero || b.kind() == K::NearZero) {
    const PadicNumber& x = a.kind() == K::Regular ? a : b;
    const int64_t noise = (a.kind() == K::NearZero ? a : b).abs_precision();
    if (x.valuation() >= noise) return PadicNumber::near_zero(p, noise);
    int64_t abs = std::min(x.abs_precision(), noise);
    return x.truncate_abs(abs);
  }
  // both Regular: align at v0, work modulo p^{A - v0}
  int64_t v0 = std::min(a.valuation(), b.valuation());
  int64_t abs = std::min(a.abs_precision(), b.abs_precision());
  int64_t len = abs - v0;  // >= 1 always
  mpz_class m = pow_p(p, len);
  mpz_class s = mod_nonneg(a.unit() * pow_p(p, a.valuation() - v0) +
                               b.unit() * pow_p(p, b.valuation() - v0),
                           m);
  if (s == 0) return PadicNumber::near_zero(p, abs);
  int64_t t = remove_p(s, p);
  return PadicNumber::from_unit(p, v0 + t, std::move(s), len - t);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  check_primes(a, b);
  const int64_t p = a.prime();
  using K = PadicNumber::Kind;
  if (a.kind() == K::ExactZero || b.kind() == K::ExactZero)
    return PadicNumber::zero(p);
  if (a.kind() == K::NearZero || b.kind() == K::NearZero) {
    int64_t bound = 0;
    bound += a.kind() == K::NearZero ? a.abs_precision() : a.valuation();
    bound += b.kind() == K::NearZero ? b.abs_precision() : b.valuation();
    return PadicNumber::near_zero(p, bound);
  }
  int64_t n = std::min(a.rel_precision(), b.rel_precision());
  mpz_class u = mod_nonneg(a.unit() * b.unit(), pow_p(p, n));
  return PadicNumber::from_unit(p, a.valuation() + b.valuation(), std::move(u), n);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
  check_primes(a, b);
  const int64_t p = a.prime();
  using K = PadicNumber::Kind;
  if (b.kind() == K::ExactZero) throw math_domain_error("division by zero");
  if (b.kind() == K::NearZero)
    throw precision_error("division by an apparent zero (divisor is O(p^" +
                          std::to_string(b.abs_precision()) + "))");
  if (a.kind() == K::ExactZero) return PadicNumber::zero(p);
  if (a.kind() == K::NearZero)
    return PadicNumber::near_zero(p, a.abs_precision() - b.valuation());
  int64_t n = std::min(a.rel_precision(), b.rel_precision());
  mpz_class m = pow_p(p, n);
  mpz_class u = mod_nonneg(a.unit() * mod_inverse(mod_nonneg(b.unit(), m), m), m);
  return PadicNumber::from_unit(p, a.valuation() - b.valuation(), std::move(u), n);
}

PadicNumber PadicNumber::mul_integer(const mpz_class& k) const {
  if (k == 0) return zero(prime_);
  if (kind_ == Kind::ExactZero) return *this;
  mpz_class n = k;
  int64_t v = remove_p(n, prime_);
  if (kind_ == Kind::NearZero) return near_zero(prime_, valuation_ + v);
  mpz_class m = pow_p(prime_, rel_prec_);
  return from_unit(prime_, valuation_ + v, mod_nonneg(unit_ * n, m), rel_prec_);
}

PadicNumber PadicNumber::mul_pow_p(int64_t k) const {
  if (kind_ == Kind::ExactZero) return *this;
  if (kind_ == Kind::NearZero) return near_zero(prime_, valuation_ + k);
  return PadicNumber(prime_, Kind::Regular, valuation_ + k, unit_, rel_prec_);
}

PadicNumber PadicNumber::truncate_abs(int64_t a) const {
  switch (kind_) {
    case Kind::ExactZero:
      return near_zero(prime_, a);
    case Kind::NearZero:
      if (a > valuation_)
        throw precision_error("cannot raise absolute precision by truncation");
      return near_zero(prime_, a);
    default: {
      if (a > valuation_ + rel_prec_)
        throw precision_error("cannot raise absolute precision by truncation");
      if (a <= valuation_) return near_zero(prime_, a);
      int64_t n = a - valuation_;
      return from_unit(prime_, valuation_, mod_nonneg(unit_, pow_p(prime_, n)), n);
    }
  }
}

std::string PadicNumber::str() const {
  if (kind_ == Kind::ExactZero) return "0";
  if (kind_ == Kind::NearZero)
    return "O(" + std::to_string(prime_) + "^" + std::to_string(valuation_) + ")";
  // little-endian digits of the unit, trailing zeros trimmed
  mpz_class u = unit_;
  std::string out;
  int64_t last = 0, i = 0;
  std::string digits;
  while (i < rel_prec_) {
    mpz_class d = mod_nonneg(u, mpz_class(static_cast<long>(prime_)));
    if (!digits.empty()) digits += '.';
    digits += d.get_str();
    if (d != 0) last = static_cast<int64_t>(digits.size());
    u = (u - d) / static_cast<long>(prime_);
    ++i;
    if (u == 0) break;
  }
  digits.resize(static_cast<size_t>(std::max<int64_t>(last, 1)));
  return digits + "*" + std::to_string(prime_) + "^" + std::to_string(valuation_);
}

Radius norm(const PadicNumber& x) { return x.norm(); }

PadicNumber sqrt(const PadicNumber& x) {
  const int64_t p = x.prime();
  if (p == 2) throw math_domain_error("sqrt unsupported for p = 2");
  if (x.is_exact_zero()) return x;
  if (x.is_near_zero())
    throw precision_error("sqrt of an apparent zero: operand is O(p^" +
                          std::to_string(x.abs_precision()) + ")");
  if (x.valuation() % 2 != 0)
    throw math_domain_error("no square root in Q_p: odd valuation " +
                            std::to_string(x.valuation()));
  const int64_t n = x.rel_precision();
  mpz_class pz(static_cast<long>(p));
  mpz_class u0 = mod_nonneg(x.unit(), pz);
  // Euler criterion
  mpz_class leg, e = (pz - 1) / 2;
  mpz_powm(leg.get_mpz_t(), u0.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
  if (leg != 1)
    throw math_domain_error("no square root in Q_p: unit residue " +
                            u0.get_str() + " is a non-residue mod " +
                            std::to_string(p));
  mpz_class r = detail::sqrt_mod_p(u0, p);
  // deterministic sign: residue in {1, ..., (p-1)/2}
  if (r > (pz - 1) / 2) r = pz - r;
  // Newton lifting of y^2 = unit, doubling the known digits each round
  int64_t have = 1;
  while (have < n) {
    int64_t next = std::min(n, 2 * have);
    mpz_class m = pow_p(p, next);
    mpz_class num = mod_nonneg(r * r - x.unit(), m);
    mpz_class den = mod_inverse(mod_nonneg(2 * r, m), m);
    r = mod_nonneg(r - num * den, m);
    have = next;
  }
  return PadicNumber::from_unit(p, x.valuation() / 2, std::move(r), n);
}

namespace {

// max(|x|, 1), decidable also for apparent zeros with A >= 0.
Radius norm_max_one(const PadicNumber& x) {
  const Radius one = Radius::one(x.prime());
  if (x.is_exact_zero()) return one;
  if (x.is_near_zero()) {
    if (x.abs_precision() >= 0) return one;
    throw precision_error("chordal denominator undecidable at current precision");
  }
  return Radius::max(x.norm(), one);
}

}  // namespace

Radius chordal_distance(const PadicNumber& x, const PadicNumber& y) {
  check_primes(x, y);
  PadicNumber d = x - y;
  return d.norm() / (norm_max_one(x) * norm_max_one(y));
}

Radius chordal_distance(const PadicNumber& x, infinity_t) {
  return Radius::one(x.prime()) / norm_max_one(x);
}

Radius chordal_distance(infinity_t, const PadicNumber& y) {
  return chordal_distance(y, infinity);
}

Radius chordal_distance(infinity_t, infinity_t, int64_t prime) {
  return Radius::zero(prime);
}

}  // namespace padyn

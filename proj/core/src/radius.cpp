#include "padyn/radius.hpp"

namespace padyn {

Radius::Radius(int64_t prime, bool zero, mpq_class vexp)
    : prime_(prime), zero_(zero), vexp_(std::move(vexp)) {
  vexp_.canonicalize();
}

Radius Radius::zero(int64_t prime) { return Radius(prime, true, mpq_class(0)); }

Radius Radius::one(int64_t prime) { return Radius(prime, false, mpq_class(0)); }

Radius Radius::from_valuation(int64_t prime, const mpq_class& v) {
  return Radius(prime, false, v);
}

Radius Radius::from_valuation(int64_t prime, long v) {
  return Radius(prime, false, mpq_class(v));
}

Radius Radius::from_power(int64_t prime, const mpq_class& e) {
  return Radius(prime, false, mpq_class(-e));
}

Radius Radius::from_power(int64_t prime, long e) {
  return Radius(prime, false, mpq_class(-e));
}

const mpq_class& Radius::vexp() const {
  if (zero_) throw math_domain_error("radius 0 has no exponent");
  return vexp_;
}

mpq_class Radius::power() const { return mpq_class(-vexp()); }

void Radius::check_same_prime(const Radius& o) const {
  if (prime_ != o.prime_)
    throw math_domain_error("value-group elements have different primes");
}

Radius Radius::operator*(const Radius& o) const {
  check_same_prime(o);
  if (zero_ || o.zero_) return zero(prime_);
  return Radius(prime_, false, vexp_ + o.vexp_);
}

Radius Radius::operator/(const Radius& o) const {
  check_same_prime(o);
  if (o.zero_) throw math_domain_error("division by radius 0");
  if (zero_) return zero(prime_);
  return Radius(prime_, false, vexp_ - o.vexp_);
}

Radius Radius::pow(long k) const {
  if (zero_) {
    if (k <= 0) throw math_domain_error("radius 0 to a non-positive power");
    return *this;
  }
  return Radius(prime_, false, vexp_ * mpq_class(k));
}

Radius Radius::root(long k) const {
  if (k < 1) throw math_domain_error("k-th root needs k >= 1");
  if (zero_) return *this;
  return Radius(prime_, false, vexp_ / mpq_class(k));
}

bool Radius::operator==(const Radius& o) const {
  check_same_prime(o);
  if (zero_ != o.zero_) return false;
  if (zero_) return true;
  return vexp_ == o.vexp_;
}

bool Radius::operator<(const Radius& o) const {
  check_same_prime(o);
  if (zero_) return !o.zero_;
  if (o.zero_) return false;
  // p^{-q1} < p^{-q2}  iff  q1 > q2
  return vexp_ > o.vexp_;
}

bool Radius::operator<=(const Radius& o) const { return *this < o || *this == o; }

std::string Radius::str() const {
  if (zero_) return "0";
  mpq_class e = -vexp_;
  return std::to_string(prime_) + "^" + e.get_str();
}

}  // namespace padyn

#include "padyn/symbolic.hpp"

#include <algorithm>

namespace padyn {

ItineraryWord::ItineraryWord(std::vector<uint8_t> symbols)
    : symbols_(std::move(symbols)) {
  for (uint8_t s : symbols_)
    if (s > 1) throw math_domain_error("itinerary symbols must be 0 or 1");
}

ItineraryWord ItineraryWord::parse(const std::string& bits) {
  std::vector<uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c == '0')
      out.push_back(0);
    else if (c == '1')
      out.push_back(1);
    else if (c == ' ' || c == ',')
      continue;
    else
      throw math_domain_error(std::string("invalid itinerary symbol '") + c + "'");
  }
  return ItineraryWord(std::move(out));
}

std::string ItineraryWord::str() const {
  std::string out;
  out.reserve(symbols_.size());
  for (uint8_t s : symbols_) out += static_cast<char>('0' + s);
  return out;
}

ItineraryWord shift(const ItineraryWord& w) {
  if (w.empty()) throw math_domain_error("shift of the empty word");
  return ItineraryWord(
      std::vector<uint8_t>(w.symbols().begin() + 1, w.symbols().end()));
}

mpq_class shift_metric(const ItineraryWord& s, const ItineraryWord& t) {
  if (s.size() != t.size())
    throw math_domain_error("shift_metric needs words of equal length");
  mpq_class sum(0);
  mpz_class denom(1);
  for (int64_t k = 0; k < s.size(); ++k) {
    if (s.at(k) != t.at(k)) sum += mpq_class(mpz_class(1), denom);
    denom *= 2;
  }
  sum.canonicalize();
  return sum;
}

PadicNumber julia_map_F(const PadicNumber& z) {
  PadicNumber one = PadicNumber::from_integer(
      mpz_class(1), z.prime(), kDefaultRelPrecision + kGuardDigits);
  return (z * (z - one)).mul_pow_p(-1);
}

ItineraryWord itinerary(const PadicNumber& z, int64_t depth) {
  const int64_t p = z.prime();
  if (p == 2) throw math_domain_error("the itinerary coding needs an odd prime");
  if (depth < 0) throw math_domain_error("depth must be >= 0");
  if (z.is_regular() && z.valuation() < 0)
    throw math_domain_error("point outside Z_p: |z| = " + z.norm().str());
  std::vector<uint8_t> out;
  out.reserve(static_cast<size_t>(depth));
  PadicNumber cur = z;
  for (int64_t k = 0; k < depth; ++k) {
    mpz_class r;
    try {
      r = cur.residue(1);
    } catch (const precision_error&) {
      throw precision_error("itinerary at step " + std::to_string(k) +
                            ": residue undecidable, precision exhausted");
    }
    if (r != 0 && r != 1)
      throw orbit_escape_error("iterate " + std::to_string(k) + " has residue " +
                                   r.get_str() + " mod " + std::to_string(p) +
                                   "; certified outside J(F) at this depth",
                               k);
    out.push_back(static_cast<uint8_t>(r.get_si()));
    cur = julia_map_F(cur);
  }
  return ItineraryWord(std::move(out));
}

namespace {

// The inverse branch of F through residue s: the root of y^2 - y - p c = 0
// with y ≡ s (mod p). Exists for every c in Z_p since 1 + 4 p c ≡ 1 (mod p).
PadicNumber branch_preimage(const PadicNumber& c, uint8_t s, int64_t p,
                            int64_t prec) {
  PadicNumber one = PadicNumber::from_integer(mpz_class(1), p, prec);
  PadicNumber four_p = PadicNumber::from_integer(mpz_class(4 * static_cast<long>(p)), p, prec);
  PadicNumber disc = one + four_p * c;
  PadicNumber root = sqrt(disc);  // residue 1 mod p by the sign convention
  PadicNumber two = PadicNumber::from_integer(mpz_class(2), p, prec);
  PadicNumber plus = (one + root) / two;   // residue 1
  PadicNumber minus = (one - root) / two;  // residue 0
  return s == 1 ? plus : minus;
}

}  // namespace

Disk decode(const ItineraryWord& w, int64_t p, int64_t rel_precision) {
  if (p == 2) throw math_domain_error("the itinerary coding needs an odd prime");
  if (w.empty())
    throw math_domain_error("decode of the empty word is the union of both "
                            "branch disks; use decode_region");
  const int64_t n = w.size();
  PadicNumber center = PadicNumber::from_integer(
      mpz_class(static_cast<long>(w.at(n - 1))), p, rel_precision);
  for (int64_t j = n - 2; j >= 0; --j)
    center = branch_preimage(center, w.at(j), p, rel_precision);
  return Disk(center, Radius::from_valuation(p, static_cast<long>(n)));
}

Region decode_region(const ItineraryWord& w, int64_t p, int64_t rel_precision) {
  if (w.empty()) {
    Radius r = Radius::from_valuation(p, 1);
    std::vector<Disk> branches;
    branches.emplace_back(PadicNumber::zero(p), r);
    branches.emplace_back(PadicNumber::from_integer(mpz_class(1), p, rel_precision), r);
    return Region::union_of_disks(std::move(branches));
  }
  return Region::union_of_disks({decode(w, p, rel_precision)});
}

PadicNumber coding_parameter(int64_t p, int64_t rel_precision) {
  // -1/(2p) - 1/(4p^2) = -(2p + 1) / (4 p^2)
  mpz_class num = -(2 * mpz_class(static_cast<long>(p)) + 1);
  mpz_class den = 4 * mpz_class(static_cast<long>(p)) * mpz_class(static_cast<long>(p));
  return PadicNumber::from_rational(num, den, p, rel_precision);
}

PadicNumber to_F_coordinates(const PadicNumber& z) {
  const int64_t p = z.prime();
  PadicNumber half = PadicNumber::from_rational(mpz_class(1), mpz_class(2), p,
                                                kDefaultRelPrecision + kGuardDigits);
  return z.mul_pow_p(1) + half;
}

PadicNumber from_F_coordinates(const PadicNumber& x) {
  const int64_t p = x.prime();
  PadicNumber half = PadicNumber::from_rational(mpz_class(1), mpz_class(2), p,
                                                kDefaultRelPrecision + kGuardDigits);
  return (x - half).mul_pow_p(-1);
}

ConjugacyProblem coding_conjugacy(const PadicNumber& c) {
  const int64_t p = c.prime();
  if (p == 2) throw math_domain_error("the pipeline needs an odd prime");
  PadicNumber gamma = coding_parameter(p, c.is_regular() ? std::max<int64_t>(c.rel_precision(),
                                                                        kDefaultRelPrecision + kGuardDigits)
                                                    : kDefaultRelPrecision + kGuardDigits);
  PadicNumber diff = c - gamma;
  Radius limit = Radius::from_power(p, 1);  // |c - gamma| < p, strict
  if (!diff.is_exact_zero() && !(diff.norm_upper_bound() < limit))
    throw certification_error("|c - gamma| = " + diff.norm_upper_bound().str() +
                              " must be strictly below " + limit.str());
  return power_family_conjugacy(2, c, gamma);
}

ItineraryWord binary_coding_pipeline(const PadicNumber& c, const PadicNumber& z,
                                     int64_t depth, const Radius& target) {
  const int64_t p = c.prime();
  ConjugacyProblem problem = coding_conjugacy(c);
  // the h_2-image runs through `depth` applications of F, each expanding by
  // |F'| = p, so evaluate h_1 tightly enough for every residue decision
  Radius needed = Radius::from_valuation(p, static_cast<long>(depth + 4));
  Radius inner = Radius::min(target, needed);
  PadicNumber transported = conjugate_point(problem, z, inner);
  return itinerary(to_F_coordinates(transported), depth);
}

}  // namespace padyn

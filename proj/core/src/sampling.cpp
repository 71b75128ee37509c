#include "padyn/sampling.hpp"

namespace padyn {

Sampler::Sampler(uint64_t seed) : rng_(gmp_randinit_mt) {
  rng_.seed(static_cast<unsigned long>(seed));
}

mpz_class Sampler::uniform_below(const mpz_class& bound) {
  return rng_.get_z_range(bound);
}

PadicNumber Sampler::point_in_disk(const Disk& d, int64_t digits) {
  const int64_t p = d.prime();
  // Q_p points of the disk fill its integral shrink
  const mpq_class& q = d.radius().vexp();
  mpz_class m0z;
  mpz_cdiv_q(m0z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  int64_t m0 = static_cast<int64_t>(m0z.get_si());
  mpz_class u = uniform_below(detail::pow_p(p, digits));
  PadicNumber offset =
      PadicNumber::from_integer(u, p, kDefaultRelPrecision + kGuardDigits)
          .mul_pow_p(m0);
  return d.center() + offset;
}

std::pair<PadicNumber, PadicNumber> Sampler::distinct_pair_in_disk(const Disk& d,
                                                                   int64_t digits) {
  for (int tries = 0; tries < 64; ++tries) {
    PadicNumber x = point_in_disk(d, digits);
    PadicNumber y = point_in_disk(d, digits);
    PadicNumber diff = x - y;
    if (diff.is_regular()) return {std::move(x), std::move(y)};
  }
  throw precision_error("could not sample a distinct pair in " + d.str());
}

}  // namespace padyn

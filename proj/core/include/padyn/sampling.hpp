#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "padyn/disk.hpp"
#include "padyn/padic.hpp"

namespace padyn {

struct SampleConfig {
  uint64_t seed = 0x9e3779b9u;
  int count = 20;  // samples per identity check
};

// Deterministic sampling of Q_p points (GMP Mersenne Twister state; the same
// seed reproduces the same stream on every platform).
class Sampler {
 public:
  explicit Sampler(uint64_t seed);

  // uniform in [0, bound)
  mpz_class uniform_below(const mpz_class& bound);

  // a Q_p point of the disk (via its integral shrink), `digits` random
  // base-p digits deep
  PadicNumber point_in_disk(const Disk& d, int64_t digits = 48);

  // a pair of distinct points of the disk
  std::pair<PadicNumber, PadicNumber> distinct_pair_in_disk(const Disk& d,
                                                            int64_t digits = 48);

 private:
  gmp_randclass rng_;
};

}  // namespace padyn

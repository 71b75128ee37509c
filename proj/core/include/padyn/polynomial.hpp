#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padyn/disk.hpp"
#include "padyn/padic.hpp"
#include "padyn/radius.hpp"

namespace padyn {

// Polynomial over Q_p. Coefficient k holds c_k; the leading coefficient is
// nonzero at its known precision (trailing exact zeros are stripped on
// construction, an apparent-zero leading coefficient is rejected because the
// degree would be undecidable).
class Polynomial {
 public:
  explicit Polynomial(std::vector<PadicNumber> coefficients);
  static Polynomial from_rationals(
      int64_t prime, const std::vector<mpq_class>& coefficients,
      int64_t rel_precision = kDefaultRelPrecision + kGuardDigits);

  int64_t prime() const noexcept { return prime_; }
  int64_t degree() const noexcept { return static_cast<int64_t>(coeff_.size()) - 1; }
  const std::vector<PadicNumber>& coefficients() const noexcept { return coeff_; }
  const PadicNumber& coeff(int64_t k) const;

  // Horner evaluation with exact precision propagation.
  PadicNumber evaluate(const PadicNumber& z) const;

  // g with g(y) = f(z0 + y); coefficient k equals f^(k)(z0)/k!, computed by
  // repeated synthetic division (no factorial division).
  Polynomial taylor_shift(const PadicNumber& z0) const;

  Polynomial derivative() const;

  // T_{i,eps}: f + eps * z^i, 0 <= i <= degree.
  Polynomial perturb(int64_t i, const PadicNumber& eps) const;

  std::string str() const;  // "c0 + c1*z + ... + cd*z^d"

 private:
  int64_t prime_;
  std::vector<PadicNumber> coeff_;
};

// One row of the Newton-polygon data for f around a center at radius r:
// the valuation exponent of |c_k| * r^k (value p^{-wexp}).
struct PolygonTerm {
  int64_t index = 0;
  bool exact_zero = false;   // coefficient is exactly 0; term absent
  bool upper_bound = false;  // coefficient is an apparent zero; wexp is only a
                             // lower bound on the true exponent
  mpq_class wexp;
};

// Polygon profile of an already recentered polynomial at radius r.
std::vector<PolygonTerm> newton_polygon_profile(const Polynomial& f_centered,
                                                const Radius& r);

// Number of zeros of f in the closed disk, counted with multiplicity:
// l = max{ l' : |c_l'| r^l' >= |c_k| r^k for all k } for the recentered
// coefficients. Undecidable comparisons at the current precision are
// reported, never guessed.
int64_t newton_root_count(const Polynomial& f, const Disk& disk);

// The unique zero of f in the disk (requires newton_root_count == 1),
// located by Newton iteration from the disk center. Leaving the disk proves
// a precondition violation and is reported. The result is verified to lie
// in the disk with residual zero at the working precision, and its digits
// are truncated to the certified accuracy |f(z)| / |f'(z)|.
PadicNumber unique_root_in_disk(const Polynomial& f, const Disk& disk);

// Q_p root isolation by residue subdivision. Splits the disk into
// integral-radius subdisks until every surviving subdisk holds exactly one
// root. Roots of f in the disk that no Q_p-centered subdisk can capture are
// conjugate clusters outside Q_p; they are counted in outside_qp.
struct RootIsolation {
  std::vector<Disk> isolated;  // count-1 disks, deterministic order
  int64_t total = 0;           // zeros of f in the disk over C_p
  int64_t outside_qp = 0;      // zeros not isolable over Q_p
};
RootIsolation isolate_roots(const Polynomial& f, const Disk& disk,
                            int64_t max_subdivision_depth = 2 * kDefaultRelPrecision);

}  // namespace padyn

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padyn/conjugacy.hpp"
#include "padyn/disk.hpp"
#include "padyn/padic.hpp"

namespace padyn {

// A finite prefix s_0 s_1 ... s_{n-1} of a point of the one-sided binary
// shift space.
class ItineraryWord {
 public:
  ItineraryWord() = default;
  explicit ItineraryWord(std::vector<uint8_t> symbols);
  static ItineraryWord parse(const std::string& bits);  // "0110..."

  int64_t size() const noexcept { return static_cast<int64_t>(symbols_.size()); }
  bool empty() const noexcept { return symbols_.empty(); }
  uint8_t at(int64_t k) const { return symbols_.at(static_cast<size_t>(k)); }
  const std::vector<uint8_t>& symbols() const noexcept { return symbols_; }

  bool operator==(const ItineraryWord& o) const { return symbols_ == o.symbols_; }
  bool operator!=(const ItineraryWord& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::vector<uint8_t> symbols_;
};

// sigma: drop the first symbol. The empty word has no image.
ItineraryWord shift(const ItineraryWord& w);

// d(s, t) = sum |s_k - t_k| / 2^k over the common (equal) length, exact;
// the truncation error against infinite words is <= 2^{-(n-1)}.
mpq_class shift_metric(const ItineraryWord& s, const ItineraryWord& t);

// F(z) = z(z-1)/p.
PadicNumber julia_map_F(const PadicNumber& z);

// Symbol k is the residue mod p of the k-th iterate under F; residues other
// than 0/1 certify escape from J(F) at that step (orbit_escape_error), and
// p must be odd with z in Z_p.
ItineraryWord itinerary(const PadicNumber& z, int64_t depth);

// The closed disk of all z whose first |w| itinerary symbols equal w,
// obtained by pulling the branch disks back through the inverse branches;
// the radius contracts by exactly 1/p per symbol. Needs |w| >= 1.
Disk decode(const ItineraryWord& w, int64_t p,
            int64_t rel_precision = kDefaultRelPrecision + kGuardDigits);

// Same, accepting the empty word: length 0 yields the union of the two
// branch disks.
Region decode_region(const ItineraryWord& w, int64_t p,
                     int64_t rel_precision = kDefaultRelPrecision + kGuardDigits);

// gamma = -1/(2p) - 1/(4p^2), the parameter with h_2(J(f_gamma)) = J(F).
PadicNumber coding_parameter(int64_t p, int64_t rel_precision = kDefaultRelPrecision +
                                                           kGuardDigits);
// h_2(z) = p z + 1/2 and its inverse.
PadicNumber to_F_coordinates(const PadicNumber& z);
PadicNumber from_F_coordinates(const PadicNumber& x);

// h_3 ∘ h_2 ∘ h_1: transport z from J(f_c) to J(f_gamma) by the stability
// conjugacy, apply the affine map, read off the itinerary. Requires p odd
// and |c - gamma| < p strictly.
ItineraryWord binary_coding_pipeline(const PadicNumber& c, const PadicNumber& z,
                                     int64_t depth, const Radius& target);

// The ConjugacyProblem behind the pipeline (f = z^2 + c, g = z^2 + gamma);
// exposed so callers can transport points in both directions.
ConjugacyProblem coding_conjugacy(const PadicNumber& c);

}  // namespace padyn

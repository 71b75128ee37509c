#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padyn/padic.hpp"
#include "padyn/radius.hpp"

namespace padyn {

// Closed disk D̄_r(a) with a Q_p center and a value-group radius.
// Membership is exact; two disks either nest or are disjoint.
class Disk {
 public:
  Disk(PadicNumber center, Radius radius);

  int64_t prime() const noexcept { return center_.prime(); }
  const PadicNumber& center() const noexcept { return center_; }
  const Radius& radius() const noexcept { return radius_; }

  bool contains(const PadicNumber& z) const;
  bool contains_disk(const Disk& o) const;
  bool disjoint_from(const Disk& o) const;

  std::string str() const;  // "(center, p^q)"

 private:
  PadicNumber center_;
  Radius radius_;
};

// A region B: either a finite union of equal-radius disks (merged and
// pairwise disjoint) or the sphere {z : |z| = r}.
class Region {
 public:
  static Region union_of_disks(std::vector<Disk> disks);
  static Region sphere(Radius radius);

  bool is_union() const noexcept { return !sphere_; }
  bool is_sphere() const noexcept { return sphere_.has_value(); }
  int64_t prime() const;

  const std::vector<Disk>& disks() const;
  const Radius& sphere_radius() const;

  bool contains(const PadicNumber& z) const;

  // Member radius delta for unions (condition "D̄_delta(z) ⊂ B" holds
  // automatically for equal-radius unions); spheres have no canonical
  // delta — the context builder chooses one.
  const Radius& delta() const;

  // Smallest certified M >= 1 with B ⊆ D̄_M(0).
  Radius bounding_M() const;

  std::string str() const;  // "disks:[(c, p^q), ...]" or "sphere:p^q"

 private:
  Region() = default;
  std::vector<Disk> disks_;
  std::optional<Radius> sphere_;
};

}  // namespace padyn

#include "padyn/disk.hpp"

#include <optional>

namespace padyn {

Disk::Disk(PadicNumber center, Radius radius)
    : center_(std::move(center)), radius_(std::move(radius)) {
  if (center_.prime() != radius_.prime())
    throw math_domain_error("disk center and radius have different primes");
  if (radius_.is_zero()) throw math_domain_error("disk radius must be positive");
}

bool Disk::contains(const PadicNumber& z) const {
  PadicNumber d = z - center_;
  if (d.is_exact_zero()) return true;
  if (d.is_near_zero()) {
    if (d.norm_upper_bound() <= radius_) return true;
    throw precision_error("disk membership undecidable: |z - a| only bounded by " +
                          d.norm_upper_bound().str());
  }
  return d.norm() <= radius_;
}

bool Disk::contains_disk(const Disk& o) const {
  if (!(o.radius_ <= radius_)) return false;
  return contains(o.center_);
}

bool Disk::disjoint_from(const Disk& o) const {
  PadicNumber d = o.center_ - center_;
  Radius rmax = Radius::max(radius_, o.radius_);
  if (d.is_exact_zero()) return false;
  if (d.is_near_zero()) {
    if (d.norm_upper_bound() <= rmax) return false;
    throw precision_error("disk disjointness undecidable at current precision");
  }
  return d.norm() > rmax;
}

std::string Disk::str() const {
  return "(" + center_.str() + ", " + radius_.str() + ")";
}

Region Region::union_of_disks(std::vector<Disk> disks) {
  if (disks.empty()) throw math_domain_error("region must be non-empty");
  const Radius& delta = disks.front().radius();
  for (const Disk& d : disks) {
    if (d.prime() != disks.front().prime())
      throw math_domain_error("region disks have different primes");
    if (d.radius() != delta)
      throw math_domain_error("union-of-disks region needs equal radii");
  }
  // merge coincident disks (any point of a disk is a center for it)
  std::vector<Disk> merged;
  for (Disk& d : disks) {
    bool dup = false;
    for (const Disk& m : merged)
      if (!m.disjoint_from(d)) {
        dup = true;
        break;
      }
    if (!dup) merged.push_back(std::move(d));
  }
  Region r;
  r.disks_ = std::move(merged);
  return r;
}

Region Region::sphere(Radius radius) {
  if (radius.is_zero()) throw math_domain_error("sphere radius must be positive");
  Region r;
  r.sphere_ = std::move(radius);
  return r;
}

int64_t Region::prime() const {
  return sphere_ ? sphere_->prime() : disks_.front().prime();
}

const std::vector<Disk>& Region::disks() const {
  if (is_sphere()) throw math_domain_error("sphere region has no member disks");
  return disks_;
}

const Radius& Region::sphere_radius() const {
  if (!is_sphere()) throw math_domain_error("region is not a sphere");
  return *sphere_;
}

bool Region::contains(const PadicNumber& z) const {
  if (is_sphere()) {
    if (z.is_exact_zero()) return false;
    if (z.is_near_zero()) {
      if (z.norm_upper_bound() < *sphere_) return false;
      throw precision_error("sphere membership undecidable at current precision");
    }
    return z.norm() == *sphere_;
  }
  for (const Disk& d : disks_)
    if (d.contains(z)) return true;
  return false;
}

const Radius& Region::delta() const {
  if (is_sphere())
    throw math_domain_error("sphere region has no canonical delta; supply one");
  return disks_.front().radius();
}

Radius Region::bounding_M() const {
  Radius m = Radius::one(prime());
  if (is_sphere()) return Radius::max(m, *sphere_);
  for (const Disk& d : disks_) {
    m = Radius::max(m, d.radius());
    const PadicNumber& c = d.center();
    if (c.is_regular()) m = Radius::max(m, c.norm());
    // near-zero centers are within the disk radius of 0 anyway
  }
  return m;
}

std::string Region::str() const {
  if (is_sphere()) return "sphere:" + sphere_->str();
  std::string out = "disks:[";
  for (size_t i = 0; i < disks_.size(); ++i) {
    if (i) out += ", ";
    out += disks_[i].str();
  }
  return out + "]";
}

}  // namespace padyn

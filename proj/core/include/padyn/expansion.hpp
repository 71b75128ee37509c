#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padyn/disk.hpp"
#include "padyn/polynomial.hpp"
#include "padyn/radius.hpp"
#include "padyn/sampling.hpp"

namespace padyn {

// mu = min{ |l|^{1/(l-1)} : l in {2..d} } * delta, exactly in the value group.
Radius mu_constant(int64_t d, const Radius& delta, int64_t p);

// Certifies |f'| >= lambda on the region and returns lambda = min |f'|.
// Union of disks: f' must have no zero in any member (so |f'| is constant
// per member) and the minimum over centers must exceed 1. Sphere: the
// derivative's polygon at the sphere radius must have a unique maximal term
// (no zeros of f' on the sphere), whose value is lambda.
Radius certify_expansion(const Polynomial& map, const Region& region);

// Evidence gathered while certifying f^{-1}(B) ⊆ B.
struct InvarianceEvidence {
  // per (member index, preimage index): preimage disk and the member that
  // contains it; empty for sphere regions (polygon certificate instead)
  struct Containment {
    int64_t member;
    PadicNumber preimage_center;
    Radius preimage_radius;
    int64_t contained_in;
  };
  std::vector<Containment> containments;
  bool by_counting_only = false;  // preimage centers not Q_p-isolable; the
                                  // exact counting certificate decided alone
  std::string note;
};

// The data (B, lambda, delta, mu, M) certifying that a map is immediately
// expanding on B with f^{-1}(B) ⊆ B, B ⊆ D̄_M(0) and D̄_delta(z) ⊆ B for
// z in B. Construction runs both certificates and fails loudly.
class ExpansionContext {
 public:
  // delta: member radius for unions (must be omitted or equal); spheres
  // need an explicit delta < R (default R/p).
  static ExpansionContext build(Polynomial map, Region region,
                                std::optional<Radius> delta = std::nullopt);

  const Polynomial& map() const noexcept { return map_; }
  const Region& region() const noexcept { return region_; }
  const Radius& lambda() const noexcept { return lambda_; }
  const Radius& delta() const noexcept { return delta_; }
  const Radius& mu() const noexcept { return mu_; }
  const Radius& bigM() const noexcept { return bigM_; }
  const InvarianceEvidence& invariance_evidence() const noexcept { return evidence_; }
  int64_t prime() const noexcept { return map_.prime(); }

 private:
  ExpansionContext(Polynomial map, Region region, Radius lambda, Radius delta,
                   Radius mu, Radius bigM, InvarianceEvidence evidence);
  Polynomial map_;
  Region region_;
  Radius lambda_, delta_, mu_, bigM_;
  InvarianceEvidence evidence_;
};

// tau(i) = min(lambda / M^{i-1}, mu / M^i), 0 <= i <= d.
Radius tau_threshold(int64_t i, const ExpansionContext& ctx);

// Membership in S(d, lambda, B): |g'| >= ctx.lambda on B and g^{-1}(B) ⊆ B.
// Certification failures answer false; precision failures propagate.
bool verify_S_membership(const Polynomial& g, const ExpansionContext& ctx);

struct PreimageDisk {
  PadicNumber center;  // z_k with f(z_k) = w
  Radius radius;       // R_k = r / |f'(z_k)| < r
  Radius deriv_norm;   // |f'(z_k)|
};

// The disk-preimage decomposition f^{-1}(D̄_r(w)) = ⊔ D̄_{R_k}(z_k): exactly d
// pairwise disjoint disks on which f is a bijection onto the target.
// Requires w in B and 0 < r <= mu. Exact certificates (dominance of f' in
// each Taylor expansion, pairwise disjointness) always run; the scaling
// identity |f(x)-f(y)| = |f'(z_k)| |x-y| is additionally spot-checked on
// `samples.count` pairs per disk.
std::vector<PreimageDisk> preimage_disks(const ExpansionContext& ctx,
                                         const Disk& target,
                                         const SampleConfig& samples = {});

namespace detail {
// Shared by certification (which cannot yet hold a context) and the public
// preimage_disks.
std::vector<PreimageDisk> preimage_decomposition(const Polynomial& map,
                                                 const Region& region,
                                                 const Radius& lambda,
                                                 const Radius& delta,
                                                 const Radius& mu,
                                                 const Disk& target,
                                                 const SampleConfig& samples);
InvarianceEvidence certify_backward_invariance(const Polynomial& map,
                                               const Region& region,
                                               const Radius& lambda,
                                               const Radius& delta,
                                               const Radius& mu);
}  // namespace detail

}  // namespace padyn

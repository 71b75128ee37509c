#pragma once

#include <cstdint>
#include <vector>

#include "padyn/expansion.hpp"
#include "padyn/polynomial.hpp"

namespace padyn {

// A certified instance of the stability machine: f with its context, a
// nearby g in S, and the drift bound sup_B |g - f| <= mu.
struct ConjugacyProblem {
  Polynomial f;
  Polynomial g;
  ExpansionContext ctx;  // certifies f; g is S-verified against it
  Radius drift;          // certified sup_{z in B} |g(z) - f(z)|, <= mu
  Radius lambda;         // shared expansion constant
};

// Admits g when every coefficient difference satisfies |a_k - b_k| < tau(k)
// (each one-index perturbation then preserves S, so their composition does,
// and the telescoped drift stays <= mu), and verifies S-membership of g.
// Violations report the offending index and the required threshold.
ConjugacyProblem neighborhood_check(const Polynomial& f, const Polynomial& g,
                                    const ExpansionContext& ctx);

// Per-level record of the backward-shadowing run.
struct ShadowingStep {
  int64_t level;           // k: the correction from h_k to h_{k+1}
  Radius bound;            // mu / lambda^{k+1}
  Radius correction_norm;  // certified upper bound on |h_{k+1}(z) - h_k(z)|
};

struct ShadowingTrace {
  PadicNumber point;
  int64_t depth = 0;
  std::vector<PadicNumber> forward_orbit;    // z, f(z), ..., f^n(z)
  std::vector<PadicNumber> backward_values;  // h_0(z), ..., h_n(z)
  std::vector<ShadowingStep> steps;
  Radius certified_error;  // mu / lambda^n < target
  ShadowingTrace() : point(PadicNumber::zero(2)), certified_error(Radius::zero(2)) {}
};

// Smallest n with mu / lambda^n < target.
int64_t shadowing_depth(const ConjugacyProblem& problem, const Radius& target);

// h_infinity(z) to within target: build the forward f-orbit to depth n, set
// h_0 = id at the deepest point, and pull back level by level, each value
// the unique g-preimage of the previous level's image inside the disk of
// radius mu/lambda^{k+1} around the current one.
PadicNumber conjugate_point(const ConjugacyProblem& problem, const PadicNumber& z,
                            const Radius& target, ShadowingTrace* trace = nullptr);

// |g(h(z)) - h(f(z))| <= target (h evaluated tightly enough that the
// comparison is meaningful after one application of g).
bool verify_semiconjugacy(const ConjugacyProblem& problem, const PadicNumber& z,
                          const Radius& target);

// A Q_p-rational fixed point of map in the region with |map'| > 1 there.
// Existence is only guaranteed over C_p; rational non-existence is a typed
// math-domain failure. Higher periods: pass f^m as the map.
PadicNumber find_repelling_fixed_point(const Polynomial& map, const Region& region);

// The z^d + c machine: both parameters must escape (|c| > 1 exactly), p must
// not divide d, and |c - c2| must clear the strict perturbation threshold.
// The sphere context is built with delta chosen from |c - c2| so the full
// admissible range is certified. Evaluate via conjugate_point.
ConjugacyProblem power_family_conjugacy(int64_t d, const PadicNumber& c,
                                       const PadicNumber& c2);

// The same instance with the roles of f and g swapped (context rebuilt on g).
ConjugacyProblem reverse(const ConjugacyProblem& problem);

// z^d + c as a Polynomial.
Polynomial power_family_map(int64_t d, const PadicNumber& c);

}  // namespace padyn

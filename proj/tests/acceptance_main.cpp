// Acceptance suite: property-based checks plus exact worked identities at
// desk scale (p in {3,5,7}, 64-digit precision). One line per criterion;
// exit status 0 only if every criterion passes.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "padyn/conjugacy.hpp"
#include "padyn/expansion.hpp"
#include "padyn/symbolic.hpp"

using namespace padyn;

namespace {

struct Check {
  int64_t tested = 0;
  int64_t failed = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++tested;
    if (!ok) {
      ++failed;
      if (first_failure.empty()) first_failure = what;
    }
  }
};

class RatGen {
 public:
  explicit RatGen(uint64_t seed) : eng_(seed) {}
  int64_t below(int64_t n) { return static_cast<int64_t>(eng_() % static_cast<uint64_t>(n)); }
  mpq_class rational(int64_t bound = 50) {
    int64_t num = 0;
    while (num == 0) num = below(2 * bound - 1) - (bound - 1);
    int64_t den = 1 + below(bound - 1);
    mpq_class q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
  }
  mpq_class rational_or_zero(int64_t bound = 50) {
    if (below(8) == 0) return mpq_class(0);
    return rational(bound);
  }

 private:
  std::mt19937_64 eng_;
};

PadicNumber from_q(const mpq_class& q, int64_t p, int64_t prec = 80) {
  return PadicNumber::from_rational(q.get_num(), q.get_den(), p, prec);
}

Polynomial F_map(int64_t p) {
  return Polynomial::from_rationals(
      p, {0, mpq_class(-1, static_cast<long>(p)), mpq_class(1, static_cast<long>(p))}, 80);
}

Region F_region(int64_t p) {
  Radius r = Radius::from_power(p, -1);
  return Region::union_of_disks(
      {Disk(PadicNumber::zero(p), r), Disk(PadicNumber::from_integer(1, p, 80), r)});
}

// ---------------------------------------------------------------------------
// 1. Ultrametric suite: 10,000 random rational pairs per prime.
Check criterion_ultrametric() {
  Check c;
  RatGen gen(2024);
  for (int64_t p : {3, 5, 7}) {
    for (int i = 0; i < 10000; ++i) {
      mpq_class qa = gen.rational_or_zero(), qb = gen.rational_or_zero();
      PadicNumber a = from_q(qa, p, 64), b = from_q(qb, p, 64);
      PadicNumber s = a + b;
      Radius bound = Radius::max(a.norm(), b.norm());
      c.expect(s.norm_upper_bound() <= bound, "subadditivity |a+b| <= max");
      if (a.norm() != b.norm()) {
        c.expect(s.is_regular() && s.norm() == bound,
                 "equality when norms differ at p=" + std::to_string(p));
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 2. Newton-polygon oracle: 500 random polynomials per prime, disks p^-m.
Check criterion_polygon_oracle() {
  Check c;
  RatGen gen(7777);
  for (int64_t p : {3, 5, 7}) {
    for (int i = 0; i < 500; ++i) {
      oracle::RatPoly rf;
      int64_t d = 1 + gen.below(4);
      for (int64_t k = 0; k < d; ++k) rf.push_back(gen.rational_or_zero(50));
      rf.push_back(gen.rational(50));
      mpq_class center = gen.rational_or_zero(50);
      Polynomial f = Polynomial::from_rationals(p, rf, 80);
      for (long m = 0; m <= 3; ++m) {
        int64_t want = oracle::count_roots_in_disk(rf, center, m, p);
        int64_t got = newton_root_count(
            f, Disk(from_q(center, p), Radius::from_power(p, -m)));
        c.expect(got == want, "count mismatch at p=" + std::to_string(p) +
                                  " m=" + std::to_string(m) + ": got " +
                                  std::to_string(got) + " want " +
                                  std::to_string(want));
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 3. Preimage decomposition suite for F and the sphere family.
Check criterion_preimage_decomposition() {
  Check c;
  auto exercise = [&](const ExpansionContext& ctx, const Disk& target,
                      uint64_t seed) {
    auto pre = preimage_disks(ctx, target, SampleConfig{seed, 20});
    c.expect(static_cast<int64_t>(pre.size()) == ctx.map().degree(),
             "exactly d preimage disks");
    for (const auto& pd : pre)
      c.expect(pd.radius < target.radius(), "R_k < r");
    for (size_t i = 0; i < pre.size(); ++i)
      for (size_t j = i + 1; j < pre.size(); ++j)
        c.expect(Disk(pre[i].center, pre[i].radius)
                     .disjoint_from(Disk(pre[j].center, pre[j].radius)),
                 "pairwise disjoint");
    // scaling identity |f(x)-f(y)| = |f'(z_k)| |x-y|, 20 pairs per disk
    Sampler sampler(seed ^ 0x5a5a);
    for (const auto& pd : pre) {
      Disk dd(pd.center, pd.radius);
      for (int s = 0; s < 20; ++s) {
        auto [x, y] = sampler.distinct_pair_in_disk(dd);
        PadicNumber num = ctx.map().evaluate(x) - ctx.map().evaluate(y);
        PadicNumber den = x - y;
        c.expect(num.is_regular() &&
                     num.norm() == pd.deriv_norm * den.norm(),
                 "scaling identity on " + dd.str());
      }
    }
  };

  ExpansionContext fctx = ExpansionContext::build(F_map(3), F_region(3));
  exercise(fctx, Disk(PadicNumber::zero(3), Radius::from_power(3, -1)), 101);
  exercise(fctx, Disk(PadicNumber::from_integer(1, 3, 80), Radius::from_power(3, -2)), 102);

  // f_c with c = -7/36 + 3 (|eps| = 1/3 admissible)
  PadicNumber cparam = from_q(mpq_class(101, 36), 3);
  Polynomial fc = power_family_map(2, cparam);
  ExpansionContext sctx = ExpansionContext::build(
      fc, Region::sphere(Radius::from_power(3, 1)), Radius::one(3));
  PadicNumber w = find_repelling_fixed_point(fc, sctx.region());
  exercise(sctx, Disk(w, Radius::from_power(3, -1)), 103);
  exercise(sctx, Disk(w, Radius::from_power(3, -3)), 104);
  return c;
}

// ---------------------------------------------------------------------------
// 4. Step-1 suite: 100 admissible perturbations per index.
Check criterion_step1() {
  Check c;
  ExpansionContext ctx = ExpansionContext::build(F_map(3), F_region(3));
  Polynomial f = F_map(3);
  Polynomial fp = f.derivative();
  RatGen gen(4242);
  Sampler sampler(31337);
  for (int64_t i = 0; i <= 2; ++i) {
    // tau(i) = 1/3 here: |eps| < tau(i) iff v(eps) >= 1; vary the size
    for (int trial = 0; trial < 100; ++trial) {
      mpq_class base = gen.rational(30);
      int64_t extra = gen.below(3);
      mpq_class eps = base * 243;  // v >= 2 regardless of base's 3-part
      for (int64_t e = 0; e < extra; ++e) eps *= 3;
      PadicNumber epadic = from_q(eps, 3);
      Polynomial g = f.perturb(i, epadic);
      c.expect(epadic.norm() < tau_threshold(i, ctx),
               "generated eps below tau(i)");
      c.expect(verify_S_membership(g, ctx),
               "T_{i,eps}(f) in S for i=" + std::to_string(i));
      Polynomial gp = g.derivative();
      for (int s = 0; s < 20; ++s) {
        const Disk& member = ctx.region().disks()[static_cast<size_t>(s % 2)];
        PadicNumber z = sampler.point_in_disk(member);
        c.expect(gp.evaluate(z).norm() == fp.evaluate(z).norm(),
                 "norm preservation |T'| = |f'|");
        PadicNumber drift = g.evaluate(z) - f.evaluate(z);
        c.expect(drift.norm_upper_bound() <= ctx.mu(), "drift <= mu");
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 5. Conjugacy contraction, semiconjugacy, and depth determinism.
Check criterion_contraction() {
  Check c;
  PadicNumber gamma = coding_parameter(3);
  PadicNumber eps = PadicNumber::from_integer(3, 3, 80);  // |eps| = 1/3
  ConjugacyProblem problem = power_family_conjugacy(2, gamma, gamma + eps);
  Radius target = Radius::from_power(3, -10);
  RatGen gen(515);
  for (int point = 0; point < 10; ++point) {
    std::vector<uint8_t> bits;
    for (int i = 0; i < 10; ++i) bits.push_back(static_cast<uint8_t>(gen.below(2)));
    PadicNumber z = from_F_coordinates(decode(ItineraryWord(bits), 3).center());
    ShadowingTrace trace;
    PadicNumber h = conjugate_point(problem, z, target, &trace);
    for (const auto& st : trace.steps) {
      c.expect(st.correction_norm <= st.bound,
               "|h_{k+1}-h_k| <= mu/lambda^{k+1} at level " + std::to_string(st.level));
      c.expect(st.bound == problem.ctx.mu() / problem.lambda.pow(st.level + 1),
               "ledger bound is mu/lambda^{k+1}");
    }
    // semiconjugacy residual at the target
    c.expect(verify_semiconjugacy(problem, z, target), "semiconjugacy residual");
    // depth overshoot: recompute five levels deeper
    PadicNumber deeper = conjugate_point(problem, z, target / problem.lambda.pow(5));
    PadicNumber diff = h - deeper;
    c.expect(diff.is_exact_zero() || diff.norm_upper_bound() <= target,
             "depth n and n+5 agree within the target");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 6. Fixed-point transport for d in {2,4}, p in {3,5}.
Check criterion_fixed_point_transport() {
  Check c;
  struct Case {
    int64_t p, d;
    mpq_class cq, fixed, eps;
  };
  std::vector<Case> cases = {
      {3, 2, mpq_class(-7, 36), mpq_class(7, 6), mpq_class(3)},
      {5, 2, mpq_class(-6, 25), mpq_class(6, 5), mpq_class(5)},
      {3, 4, mpq_class(26, 81), mpq_class(1, 3), mpq_class(1)},
      {5, 4, mpq_class(124, 625), mpq_class(1, 5), mpq_class(1)},
  };
  for (const auto& cs : cases) {
    std::string tag = " (p=" + std::to_string(cs.p) + ", d=" + std::to_string(cs.d) + ")";
    PadicNumber cp = from_q(cs.cq, cs.p);
    ConjugacyProblem problem = power_family_conjugacy(cs.d, cp, cp + from_q(cs.eps, cs.p));
    PadicNumber w = from_q(cs.fixed, cs.p);
    c.expect(!(problem.f.evaluate(w) - w).is_regular(), "w is fixed" + tag);
    c.expect(w.norm() == cp.norm().root(cs.d), "|w| = |c|^{1/d}" + tag);
    Radius target = Radius::from_power(cs.p, -10);
    PadicNumber hw = conjugate_point(problem, w, target / problem.lambda.pow(2));
    PadicNumber resid = problem.g.evaluate(hw) - hw;
    c.expect(resid.norm_upper_bound() <= target,
             "g(h(w)) = h(w) within p^-10" + tag);
  }
  return c;
}

// ---------------------------------------------------------------------------
// 7. Symbolic suite: equivariance, contraction rate, the coding pipeline.
Check criterion_symbolic() {
  Check c;
  RatGen gen(616);
  // 50 decoded random words at depth 20
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<uint8_t> bits;
    for (int i = 0; i < 20; ++i) bits.push_back(static_cast<uint8_t>(gen.below(2)));
    ItineraryWord w(bits);
    Disk d = decode(w, 3);
    c.expect(d.radius() == Radius::from_power(3, -20), "decode radius p^-|w|");
    PadicNumber z = d.center();
    c.expect(itinerary(z, 20) == w, "decode center reproduces the word");
    c.expect(itinerary(julia_map_F(z), 19) == shift(w), "shift equivariance");
  }
  // radius contracts by exactly 1/p per symbol
  for (int64_t len = 1; len <= 12; ++len) {
    std::vector<uint8_t> bits;
    for (int64_t i = 0; i < len; ++i) bits.push_back(static_cast<uint8_t>(gen.below(2)));
    c.expect(decode(ItineraryWord(bits), 3).radius() == Radius::from_power(3, -len),
             "per-symbol contraction");
  }
  // pipeline equivariance at c = gamma + 1 (|eps| = 1)
  PadicNumber cparam = from_q(mpq_class(29, 36), 3);
  Polynomial fc = power_family_map(2, cparam);
  ConjugacyProblem back = reverse(coding_conjugacy(cparam));
  Radius target = Radius::from_power(3, -16);
  for (int point = 0; point < 10; ++point) {
    std::vector<uint8_t> bits;
    for (int i = 0; i < 9; ++i) bits.push_back(static_cast<uint8_t>(gen.below(2)));
    PadicNumber zg = from_F_coordinates(decode(ItineraryWord(bits), 3).center());
    PadicNumber z = conjugate_point(back, zg, target);
    ItineraryWord full = binary_coding_pipeline(cparam, z, 9, target);
    ItineraryWord shifted = binary_coding_pipeline(cparam, fc.evaluate(z), 8, target);
    c.expect(shifted == shift(full), "pipeline equivariance");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 8. Negative paths: typed failures, never a crash.
Check criterion_negative_paths() {
  Check c;
  // sqrt of a non-residue
  bool typed = false;
  try {
    (void)sqrt(PadicNumber::from_integer(2, 3, 64));
  } catch (const math_domain_error&) {
    typed = true;
  }
  c.expect(typed, "sqrt(2) at p=3 is a typed math-domain failure");

  // preimage request beyond mu
  typed = false;
  try {
    ExpansionContext ctx = ExpansionContext::build(F_map(3), F_region(3));
    (void)preimage_disks(ctx, Disk(PadicNumber::zero(3), Radius::one(3)));
  } catch (const certification_error& e) {
    typed = std::string(e.what()).find("mu") != std::string::npos;
  }
  c.expect(typed, "r > mu names the violated bound");

  // non-invariant B is rejected with the escaping disk named
  typed = false;
  try {
    (void)ExpansionContext::build(
        F_map(3), Region::union_of_disks(
                      {Disk(PadicNumber::zero(3), Radius::from_power(3, -1))}));
  } catch (const certification_error& e) {
    std::string msg = e.what();
    typed = msg.find("escap") != std::string::npos &&
            msg.find("not backward invariant") != std::string::npos;
  }
  c.expect(typed, "invariance failure names the escaping preimage");

  // p | d in the z^d + c machine
  typed = false;
  try {
    PadicNumber cc = PadicNumber::from_rational(1, 4, 2, 64);
    (void)power_family_conjugacy(2, cc, cc);
  } catch (const math_domain_error&) {
    typed = true;
  }
  c.expect(typed, "p | d rejected in thm23");
  return c;
}

struct Criterion {
  const char* name;
  std::function<Check()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 ultrametric: 10000 pairs/prime, subadditivity + equality on distinct norms",
       criterion_ultrametric},
      {"2 newton polygon vs brute-force oracle: 500 polynomials/prime, m <= 3",
       criterion_polygon_oracle},
      {"3 preimage decomposition: disjoint disks, exact scaling identity, R_k < r",
       criterion_preimage_decomposition},
      {"4 step-1 thresholds: S preserved, |T'| = |f'|, drift <= mu",
       criterion_step1},
      {"5 conjugacy contraction ledger, semiconjugacy, depth determinism",
       criterion_contraction},
      {"6 fixed-point transport for d in {2,4}, p in {3,5}",
       criterion_fixed_point_transport},
      {"7 symbolic coding: equivariance, contraction rate, cor42 pipeline",
       criterion_symbolic},
      {"8 negative paths are typed failures", criterion_negative_paths},
  };
  int failures = 0;
  for (const auto& crit : criteria) {
    Check result;
    std::string blew_up;
    try {
      result = crit.run();
    } catch (const std::exception& e) {
      blew_up = e.what();
    }
    bool ok = blew_up.empty() && result.failed == 0 && result.tested > 0;
    if (ok) {
      std::printf("[PASS] criterion %s (%lld checks)\n", crit.name,
                  static_cast<long long>(result.tested));
    } else {
      ++failures;
      if (!blew_up.empty())
        std::printf("[FAIL] criterion %s: exception: %s\n", crit.name, blew_up.c_str());
      else
        std::printf("[FAIL] criterion %s: %lld/%lld failed; first: %s\n", crit.name,
                    static_cast<long long>(result.failed),
                    static_cast<long long>(result.tested),
                    result.first_failure.c_str());
    }
  }
  return failures == 0 ? 0 : 1;
}

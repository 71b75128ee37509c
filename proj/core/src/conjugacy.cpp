#include "padyn/conjugacy.hpp"

#include <algorithm>

namespace padyn {

namespace {

Radius diff_norm_bound(const PadicNumber& d) {
  if (d.is_exact_zero()) return Radius::zero(d.prime());
  return d.norm_upper_bound();
}

}  // namespace

ConjugacyProblem neighborhood_check(const Polynomial& f, const Polynomial& g,
                                    const ExpansionContext& ctx) {
  if (f.prime() != g.prime()) throw math_domain_error("prime mismatch");
  if (f.degree() != g.degree())
    throw math_domain_error("degree mismatch: deg f = " +
                            std::to_string(f.degree()) + ", deg g = " +
                            std::to_string(g.degree()));
  const int64_t d = f.degree();
  Radius drift = Radius::zero(f.prime());
  for (int64_t k = 0; k <= d; ++k) {
    PadicNumber delta_k = g.coeff(k) - f.coeff(k);
    if (delta_k.is_exact_zero()) continue;
    Radius bound = diff_norm_bound(delta_k);
    Radius tau = tau_threshold(k, ctx);
    if (!(bound < tau)) {
      if (delta_k.is_near_zero())
        throw precision_error("coefficient " + std::to_string(k) +
                              " difference undecided against tau(" +
                              std::to_string(k) + ") = " + tau.str());
      throw certification_error(
          "coefficient " + std::to_string(k) + " differs by " + bound.str() +
          ", needs |a_k - b_k| < tau(" + std::to_string(k) + ") = " + tau.str());
    }
    drift = Radius::max(drift, bound * ctx.bigM().pow(k));
  }
  if (!(drift <= ctx.mu()))
    throw certification_error("drift bound " + drift.str() +
                              " exceeds mu = " + ctx.mu().str());
  if (!verify_S_membership(g, ctx))
    throw certification_error("g is not in S(d, lambda, B): S-membership "
                              "certificates failed for " + g.str());
  return ConjugacyProblem{f, g, ctx, std::move(drift), ctx.lambda()};
}

int64_t shadowing_depth(const ConjugacyProblem& problem, const Radius& target) {
  if (target.is_zero()) throw math_domain_error("target must be positive");
  // mu / lambda^n < target  with lambda = p^{-ql}, ql < 0:
  // n > (q_target - q_mu) / (-ql)
  const mpq_class& qmu = problem.ctx.mu().vexp();
  const mpq_class& ql = problem.ctx.lambda().vexp();
  const mpq_class& qt = target.vexp();
  mpq_class ratio = (qt - qmu) / (-ql);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), ratio.get_num().get_mpz_t(), ratio.get_den().get_mpz_t());
  int64_t n = static_cast<int64_t>(fl.get_si()) + 1;
  return std::max<int64_t>(n, 0);
}

PadicNumber conjugate_point(const ConjugacyProblem& problem, const PadicNumber& z,
                            const Radius& target, ShadowingTrace* trace) {
  const ExpansionContext& ctx = problem.ctx;
  const int64_t n = shadowing_depth(problem, target);

  // forward orbit under f; escaping proves z is outside Omega at this depth
  std::vector<PadicNumber> orbit;
  orbit.reserve(static_cast<size_t>(n) + 1);
  orbit.push_back(z);
  for (int64_t j = 0; j <= n; ++j) {
    if (!ctx.region().contains(orbit.back()))
      throw orbit_escape_error("forward orbit leaves B at step " +
                                   std::to_string(j) +
                                   "; the point is not in Omega at depth " +
                                   std::to_string(n),
                               j);
    if (j < n) orbit.push_back(problem.f.evaluate(orbit.back()));
  }

  if (trace) {
    trace->point = z;
    trace->depth = n;
    trace->forward_orbit = orbit;
    trace->backward_values = {z};
    trace->steps.clear();
    trace->certified_error = ctx.mu() / ctx.lambda().pow(n);
  }

  // backward pass: level k holds h_k along the orbit tail
  std::vector<PadicNumber> level = orbit;
  for (int64_t k = 0; k < n; ++k) {
    Radius bound = ctx.mu() / ctx.lambda().pow(k + 1);
    std::vector<PadicNumber> next;
    next.reserve(level.size() - 1);
    for (size_t j = 0; j + 1 < level.size(); ++j) {
      // unique w in g^{-1}(h_k(f(z_j))) with |w - h_k(z_j)| <= mu/lambda^{k+1}
      Polynomial shifted = problem.g.perturb(0, -level[j + 1]);
      Disk basin(level[j], bound);
      next.push_back(unique_root_in_disk(shifted, basin));
    }
    if (trace) {
      PadicNumber corr = next[0] - level[0];
      Radius cb = diff_norm_bound(corr);
      if (!(cb <= bound))
        throw certification_error("contraction ledger violated at level " +
                                  std::to_string(k) + ": |h_{k+1} - h_k| = " +
                                  cb.str() + " > " + bound.str());
      trace->steps.push_back({k, bound, cb});
      trace->backward_values.push_back(next[0]);
    }
    level = std::move(next);
  }
  return level[0];
}

bool verify_semiconjugacy(const ConjugacyProblem& problem, const PadicNumber& z,
                          const Radius& target) {
  // one application of g scales the evaluation error by up to the ultrametric
  // Lipschitz constant of g on D̄_M(0): max_k |g_k| M^{k-1}
  Radius amp = Radius::one(problem.f.prime());
  for (int64_t k = 1; k <= problem.g.degree(); ++k) {
    const PadicNumber& c = problem.g.coeff(k);
    if (c.is_exact_zero()) continue;
    amp = Radius::max(amp, c.norm_upper_bound() * problem.ctx.bigM().pow(k - 1));
  }
  Radius inner = target / amp;
  PadicNumber hz = conjugate_point(problem, z, inner);
  PadicNumber hfz = conjugate_point(problem, problem.f.evaluate(z), inner);
  PadicNumber resid = problem.g.evaluate(hz) - hfz;
  if (resid.is_exact_zero()) return true;
  return resid.norm_upper_bound() <= target;
}

PadicNumber find_repelling_fixed_point(const Polynomial& map, const Region& region) {
  const int64_t p = map.prime();
  PadicNumber minus_one = PadicNumber::from_integer(mpz_class(-1), p,
                                                    kDefaultRelPrecision + kGuardDigits);
  Polynomial fixed = map.perturb(1, minus_one);
  Polynomial fp = map.derivative();
  const Radius one = Radius::one(p);

  std::vector<Disk> search;
  if (region.is_sphere())
    search.emplace_back(PadicNumber::zero(p), region.sphere_radius());
  else
    search = region.disks();

  bool found_any = false;
  bool outside_qp = false;
  for (const Disk& within : search) {
    RootIsolation iso = isolate_roots(fixed, within);
    if (iso.outside_qp > 0) outside_qp = true;
    for (const Disk& dd : iso.isolated) {
      PadicNumber root = unique_root_in_disk(fixed, dd);
      if (!region.contains(root)) continue;
      found_any = true;
      PadicNumber dv = fp.evaluate(root);
      if (!dv.is_regular())
        throw precision_error("|f'| indistinguishable from zero at a fixed point");
      if (dv.norm() > one) return root;
    }
  }
  if (found_any)
    throw math_domain_error(
        "fixed points found in the region, but none repelling (|f'| <= 1)");
  if (outside_qp)
    throw math_domain_error(
        "no Q_p-rational fixed point in the region (roots exist over C_p only)");
  throw math_domain_error("no fixed point of the map in the region");
}

Polynomial power_family_map(int64_t d, const PadicNumber& c) {
  if (d < 2) throw math_domain_error("z^d + c needs d >= 2");
  const int64_t p = c.prime();
  std::vector<PadicNumber> coeffs(static_cast<size_t>(d) + 1, PadicNumber::zero(p));
  coeffs[0] = c;
  coeffs[static_cast<size_t>(d)] =
      PadicNumber::from_integer(mpz_class(1), p, kDefaultRelPrecision + kGuardDigits);
  return Polynomial(std::move(coeffs));
}

ConjugacyProblem power_family_conjugacy(int64_t d, const PadicNumber& c,
                                       const PadicNumber& c2) {
  const int64_t p = c.prime();
  if (c2.prime() != p) throw math_domain_error("prime mismatch");
  if (d < 2) throw math_domain_error("z^d + c needs d >= 2");
  if (d % p == 0)
    throw math_domain_error("p = " + std::to_string(p) + " divides d = " +
                            std::to_string(d) + "; the sphere certificate needs p ∤ d");
  const Radius one = Radius::one(p);
  // escape criterion, exact: |c| > 1 iff |f_c^k(0)| -> infinity
  if (!c.is_regular() || !(c.norm() > one))
    throw math_domain_error("the orbit of 0 under z^d + c does not escape: |c| <= 1");
  if (!c2.is_regular() || !(c2.norm() > one))
    throw math_domain_error("the orbit of 0 under z^d + c' does not escape: |c'| <= 1");

  Radius R = c.norm().root(d);  // the Julia sphere radius |c|^{1/d}
  PadicNumber eps = c2 - c;
  Radius delta = R / Radius::from_power(p, 1);
  if (!eps.is_exact_zero()) {
    Radius eb = eps.norm_upper_bound();
    if (eb == R)
      throw certification_error(
          "boundary case |c - c'| = |c|^{1/d} = " + R.str() +
          ": admissibility of the non-strict bound is not decided here; "
          "require |c - c'| strictly below it");
    // strict feasibility: need delta < R with |eps| < mu(delta) = p^{-v*} delta
    Radius mu1 = mu_constant(d, one, p);  // p^{-v*}
    if (!(eb < R * mu1))
      throw certification_error("perturbation too large: |c - c'| = " + eb.str() +
                                ", the strict threshold tops out below " +
                                (R * mu1).str());
    // rational-exponent midpoint: q_delta in (q_R, q_eps - v*)
    mpq_class qd = (R.vexp() + eb.vexp() - mu1.vexp()) / 2;
    delta = Radius::from_valuation(p, qd);
  }
  ExpansionContext ctx = ExpansionContext::build(power_family_map(d, c),
                                                 Region::sphere(R), delta);
  return neighborhood_check(power_family_map(d, c), power_family_map(d, c2), ctx);
}

ConjugacyProblem reverse(const ConjugacyProblem& problem) {
  ExpansionContext ctx =
      ExpansionContext::build(problem.g, problem.ctx.region(), problem.ctx.delta());
  return neighborhood_check(problem.g, problem.f, ctx);
}

}  // namespace padyn

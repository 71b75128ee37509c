#include "padyn/expansion.hpp"

#include <algorithm>

namespace padyn {

Radius mu_constant(int64_t d, const Radius& delta, int64_t p) {
  if (d < 2) throw math_domain_error("mu_constant needs degree >= 2");
  if (delta.is_zero()) throw math_domain_error("mu_constant needs delta > 0");
  // |l|^{1/(l-1)} = p^{-v_p(l)/(l-1)}; take the smallest value, i.e. the
  // largest exponent
  mpq_class best(0);
  for (int64_t l = 2; l <= d; ++l) {
    mpz_class n(static_cast<long>(l));
    int64_t v = detail::remove_p(n, p);
    mpq_class e(static_cast<long>(v), static_cast<long>(l - 1));
    e.canonicalize();
    if (e > best) best = e;
  }
  return Radius::from_valuation(p, best) * delta;
}

namespace {

// |f'| on a sphere is constant iff the polygon of f' at that radius has a
// unique maximal term (no zeros of f' of that exact norm); returns the value.
Radius sphere_derivative_norm(const Polynomial& fp, const Radius& R) {
  auto profile = newton_polygon_profile(fp, R);
  std::optional<mpq_class> min_w;
  int64_t lo = -1, hi = -1;
  for (const PolygonTerm& t : profile) {
    if (t.exact_zero) continue;
    if (t.upper_bound) continue;
    if (!min_w || t.wexp < *min_w) {
      min_w = t.wexp;
      lo = hi = t.index;
    } else if (t.wexp == *min_w) {
      hi = t.index;
    }
  }
  if (!min_w) throw precision_error("derivative polygon entirely undecided");
  for (const PolygonTerm& t : profile) {
    if (!t.upper_bound) continue;
    if (t.wexp > *min_w) continue;
    throw precision_error("sphere derivative norm undecidable at current precision");
  }
  if (lo != hi)
    throw certification_error(
        "derivative has zeros of norm exactly " + R.str() +
        " (polygon face from index " + std::to_string(lo) + " to " +
        std::to_string(hi) + "); |f'| is not constant on the sphere");
  return Radius::from_valuation(fp.prime(), *min_w);
}

}  // namespace

Radius certify_expansion(const Polynomial& map, const Region& region) {
  if (map.prime() != region.prime()) throw math_domain_error("prime mismatch");
  if (map.degree() < 2)
    throw math_domain_error("dynamics needs a polynomial of degree >= 2");
  const Polynomial fp = map.derivative();
  const Radius one = Radius::one(map.prime());
  Radius lambda = Radius::zero(map.prime());
  if (region.is_sphere()) {
    lambda = sphere_derivative_norm(fp, region.sphere_radius());
  } else {
    bool first = true;
    for (const Disk& member : region.disks()) {
      int64_t crit = newton_root_count(fp, member);
      if (crit != 0)
        throw certification_error("member disk " + member.str() + " contains " +
                                  std::to_string(crit) +
                                  " critical points; |f'| is not constant there");
      PadicNumber v = fp.evaluate(member.center());
      if (!v.is_regular())
        throw precision_error("|f'(center)| indistinguishable from zero on " +
                              member.str());
      Radius n = v.norm();
      lambda = first ? n : Radius::min(lambda, n);
      first = false;
    }
  }
  if (!(lambda > one))
    throw certification_error("not immediately expanding: min |f'| = " +
                              lambda.str() + " <= " + one.str());
  return lambda;
}

namespace detail {

namespace {

// All preimages of w under map: the d roots of map - w, isolated over Q_p.
// Shortfalls are typed math-domain failures naming the count.
std::vector<PadicNumber> rational_preimages(const Polynomial& map,
                                            const Region& region,
                                            const PadicNumber& w) {
  Polynomial shifted = map.perturb(0, -w);
  const int64_t d = map.degree();
  std::vector<PadicNumber> roots;
  int64_t covered = 0;
  auto take = [&](const Disk& within) {
    RootIsolation iso = isolate_roots(shifted, within);
    covered += iso.total;
    if (iso.outside_qp > 0)
      throw math_domain_error(
          std::to_string(iso.outside_qp) + " preimage(s) of " + w.str() +
          " lie outside Q_p (conjugate cluster in " + within.str() + ")");
    for (const Disk& dd : iso.isolated) roots.push_back(unique_root_in_disk(shifted, dd));
  };
  if (region.is_sphere()) {
    take(Disk(PadicNumber::zero(map.prime()), region.sphere_radius()));
  } else {
    for (const Disk& member : region.disks()) take(member);
  }
  if (covered != d || static_cast<int64_t>(roots.size()) != d)
    throw math_domain_error("only " + std::to_string(roots.size()) + " of " +
                            std::to_string(d) + " preimages of " + w.str() +
                            " are Q_p-rational points of B");
  return roots;
}

// Dominance of the linear term: |l| * |f^(l)(z0)/l!| * delta^{l-1} < |f'(z0)|
// for every l in 2..d, which forces the exact scaling |f(x)-f(y)| = |f'||x-y|
// on delta-disks around z0.
void check_dominance(const Polynomial& map, const PadicNumber& z0,
                     const Radius& delta) {
  Polynomial t = map.taylor_shift(z0);
  const int64_t p = map.prime();
  const PadicNumber& c1 = t.coeff(1);
  if (!c1.is_regular())
    throw precision_error("|f'(z_k)| indistinguishable from zero at a preimage center");
  Radius rhs = c1.norm();
  for (int64_t l = 2; l <= map.degree(); ++l) {
    const PadicNumber& cl = t.coeff(l);
    if (cl.is_exact_zero()) continue;
    mpz_class lz(static_cast<long>(l));
    int64_t vl = detail::remove_p(lz, p);
    Radius lhs = Radius::from_valuation(p, static_cast<long>(vl)) *
                 cl.norm_upper_bound() * delta.pow(l - 1);
    if (!(lhs < rhs))
      throw certification_error(
          "dominance |l||f^(l)/l!|delta^{l-1} < |f'| fails at l = " +
          std::to_string(l) + ": " + lhs.str() + " >= " + rhs.str());
  }
}

}  // namespace

std::vector<PreimageDisk> preimage_decomposition(const Polynomial& map,
                                                 const Region& region,
                                                 const Radius& lambda,
                                                 const Radius& delta,
                                                 const Radius& mu,
                                                 const Disk& target,
                                                 const SampleConfig& samples) {
  const Radius& r = target.radius();
  if (!(r <= mu))
    throw certification_error("target radius " + r.str() +
                              " exceeds the decomposition bound mu = " + mu.str());
  if (!region.contains(target.center()))
    throw certification_error("target center " + target.center().str() +
                              " is not in B = " + region.str());
  std::vector<PadicNumber> centers = rational_preimages(map, region, target.center());
  const Polynomial fp = map.derivative();
  std::vector<PreimageDisk> out;
  for (PadicNumber& z : centers) {
    check_dominance(map, z, delta);
    PadicNumber dv = fp.evaluate(z);
    if (!dv.is_regular())
      throw precision_error("|f'(z_k)| indistinguishable from zero");
    Radius dn = dv.norm();
    if (!(dn >= lambda))
      throw certification_error("|f'(z_k)| = " + dn.str() +
                                " below the expansion constant " + lambda.str());
    Radius rk = r / dn;
    out.push_back({std::move(z), std::move(rk), std::move(dn)});
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j) {
      Disk a(out[i].center, out[i].radius), b(out[j].center, out[j].radius);
      if (!a.disjoint_from(b))
        throw certification_error("preimage disks " + a.str() + " and " + b.str() +
                                  " are not disjoint");
    }
  // bijectivity evidence: the exact scaling identity, spot-checked
  if (samples.count > 0) {
    Sampler sampler(samples.seed);
    for (const PreimageDisk& pd : out) {
      Disk dk(pd.center, pd.radius);
      for (int s = 0; s < samples.count; ++s) {
        auto [x, y] = sampler.distinct_pair_in_disk(dk);
        PadicNumber num = map.evaluate(x) - map.evaluate(y);
        PadicNumber den = x - y;
        if (!num.is_regular())
          throw precision_error("scaling identity sample cancelled to zero");
        if (num.norm() != pd.deriv_norm * den.norm())
          throw certification_error(
              "scaling identity |f(x)-f(y)| = |f'(z_k)||x-y| fails on " +
              dk.str() + ": " + num.norm().str() + " != " +
              (pd.deriv_norm * den.norm()).str());
        if (!target.contains(map.evaluate(x)))
          throw certification_error("sampled preimage point maps outside the target");
      }
    }
  }
  return out;
}

InvarianceEvidence certify_backward_invariance(const Polynomial& map,
                                               const Region& region,
                                               const Radius& lambda,
                                               const Radius& delta,
                                               const Radius& mu) {
  InvarianceEvidence ev;
  const int64_t p = map.prime();
  const int64_t d = map.degree();
  if (region.is_sphere()) {
    // f^{-1}({|w| = R}) ⊆ {|z| = R} iff for every such w the polygon of
    // f - w is a single face tying indices 0 and d: |b_0 - w| = |b_d| R^d
    // with no middle term above them. |b_0 - w| depends on w only through
    // |w| = R, so this is one exact check.
    const Radius& R = region.sphere_radius();
    const PadicNumber& b0 = map.coeff(0);
    if (b0.is_near_zero() && !(b0.norm_upper_bound() < R))
      throw precision_error("constant coefficient undecided against the sphere radius");
    Radius nb0 = b0.is_regular() ? b0.norm() : b0.norm_upper_bound();
    if (b0.is_exact_zero()) nb0 = Radius::zero(p);
    if (nb0 == R)
      throw certification_error(
          "|constant coefficient| equals the sphere radius; |b_0 - w| is not "
          "determined by |w| and the invariance certificate cannot close");
    Radius beta = Radius::max(nb0, R);
    const PadicNumber& bd = map.coeff(d);
    Radius top = bd.norm() * R.pow(d);
    if (top != beta)
      throw certification_error(
          "sphere is not backward invariant: polygon endpoints differ, "
          "|b_d| R^d = " + top.str() + " vs |b_0 - w| = " + beta.str() +
          "; some preimage leaves the sphere");
    for (int64_t k = 1; k < d; ++k) {
      const PadicNumber& bk = map.coeff(k);
      if (bk.is_exact_zero()) continue;
      // a middle term may tie the face (both endpoints still attain the
      // maximum); only exceeding it pushes roots off the sphere
      Radius term = bk.norm_upper_bound() * R.pow(k);
      if (!(term <= beta)) {
        if (bk.is_near_zero())
          throw precision_error("middle coefficient " + std::to_string(k) +
                                " undecided against the polygon face");
        throw certification_error(
            "sphere is not backward invariant: middle term " +
            std::to_string(k) + " exceeds the polygon face (" + term.str() +
            " > " + beta.str() + "); preimages of norm != " + R.str() + " exist");
      }
    }
    ev.note = "sphere polygon certificate: single face tying indices 0 and " +
              std::to_string(d);
    return ev;
  }

  // Union of equal-radius disks. The preimage decomposition holds for
  // pulled-back radii r <= mu, so certifying at the member radius needs
  // delta <= mu, i.e. p > d.
  if (!(delta <= mu))
    throw certification_error(
        "member radius delta = " + delta.str() +
        " exceeds the decomposition bound mu = " + mu.str() +
        " (p <= d); invariance certificate unavailable at this radius");
  const std::vector<Disk>& members = region.disks();
  for (size_t mi = 0; mi < members.size(); ++mi) {
    Polynomial shifted = map.perturb(0, -members[mi].center());
    // every preimage point of the center must lie in some member: exact
    // counting over C_p
    int64_t covered = 0;
    for (const Disk& candidate : members)
      covered += newton_root_count(shifted, candidate);
    if (covered != d) {
      // diagnostics: name a rational escapee if one is isolable
      std::string detail;
      try {
        Disk hull(PadicNumber::zero(p), region.bounding_M() * Radius::from_power(p, 2));
        RootIsolation iso = isolate_roots(shifted, hull);
        for (const Disk& dd : iso.isolated) {
          PadicNumber root = unique_root_in_disk(shifted, dd);
          if (!region.contains(root)) {
            Radius rk = delta;  // escaping preimage disk radius r/|f'|<=delta
            detail = "; escaping preimage disk at center " + root.str() +
                     " (radius <= " + rk.str() + ")";
            break;
          }
        }
      } catch (const error&) {
        detail = "; escapee not Q_p-isolable (conjugate preimages outside B)";
      }
      throw certification_error(
          "B is not backward invariant: only " + std::to_string(covered) +
          " of " + std::to_string(d) + " preimages of the member center " +
          members[mi].center().str() + " lie in B" + detail);
    }
    // corroborating evidence: the full preimage decomposition of each
    // member target, with every returned disk inside some member
    try {
      auto pre = preimage_decomposition(map, region, lambda, delta, mu,
                                        members[mi], SampleConfig{.count = 0});
      for (const PreimageDisk& pd : pre) {
        Disk dd(pd.center, pd.radius);
        int64_t host = -1;
        for (size_t mj = 0; mj < members.size(); ++mj)
          if (members[mj].contains_disk(dd)) {
            host = static_cast<int64_t>(mj);
            break;
          }
        if (host < 0)
          throw certification_error("preimage disk " + dd.str() +
                                    " of member " + std::to_string(mi) +
                                    " escapes every member of B");
        ev.containments.push_back({static_cast<int64_t>(mi), pd.center,
                                   pd.radius, host});
      }
    } catch (const math_domain_error&) {
      // preimage centers exist in C_p \ Q_p; the counting certificate above
      // already decided containment
      ev.by_counting_only = true;
    }
  }
  if (ev.by_counting_only)
    ev.note = "some preimage centers are not Q_p-rational; invariance decided "
              "by exact root counting";
  return ev;
}

}  // namespace detail

ExpansionContext::ExpansionContext(Polynomial map, Region region, Radius lambda,
                                   Radius delta, Radius mu, Radius bigM,
                                   InvarianceEvidence evidence)
    : map_(std::move(map)),
      region_(std::move(region)),
      lambda_(std::move(lambda)),
      delta_(std::move(delta)),
      mu_(std::move(mu)),
      bigM_(std::move(bigM)),
      evidence_(std::move(evidence)) {}

ExpansionContext ExpansionContext::build(Polynomial map, Region region,
                                         std::optional<Radius> delta) {
  const int64_t p = map.prime();
  Radius lambda = certify_expansion(map, region);
  Radius dl = Radius::one(p);
  if (region.is_sphere()) {
    const Radius& R = region.sphere_radius();
    dl = delta.value_or(R / Radius::from_power(p, 1));
    if (!(dl < R))
      throw certification_error("sphere context needs delta < R: " + dl.str() +
                                " >= " + R.str());
    if (dl.is_zero()) throw math_domain_error("delta must be positive");
  } else {
    dl = region.delta();
    if (delta && *delta != dl)
      throw certification_error("delta " + delta->str() +
                                " differs from the member radius " + dl.str());
  }
  Radius mu = mu_constant(map.degree(), dl, p);
  Radius bigM = region.bounding_M();
  InvarianceEvidence ev =
      detail::certify_backward_invariance(map, region, lambda, dl, mu);
  return ExpansionContext(std::move(map), std::move(region), std::move(lambda),
                          std::move(dl), std::move(mu), std::move(bigM),
                          std::move(ev));
}

Radius tau_threshold(int64_t i, const ExpansionContext& ctx) {
  if (i < 0 || i > ctx.map().degree())
    throw math_domain_error("tau index must satisfy 0 <= i <= d");
  Radius eta1 = ctx.lambda() / ctx.bigM().pow(i - 1);
  Radius eta2 = ctx.mu() / ctx.bigM().pow(i);
  return Radius::min(eta1, eta2);
}

bool verify_S_membership(const Polynomial& g, const ExpansionContext& ctx) {
  if (g.prime() != ctx.prime()) throw math_domain_error("prime mismatch");
  if (g.degree() != ctx.map().degree())
    throw math_domain_error("degree mismatch: " + std::to_string(g.degree()) +
                            " vs " + std::to_string(ctx.map().degree()));
  try {
    Radius lg = certify_expansion(g, ctx.region());
    if (!(lg >= ctx.lambda())) return false;
    detail::certify_backward_invariance(g, ctx.region(), ctx.lambda(),
                                        ctx.delta(), ctx.mu());
  } catch (const certification_error&) {
    return false;
  }
  return true;
}

std::vector<PreimageDisk> preimage_disks(const ExpansionContext& ctx,
                                         const Disk& target,
                                         const SampleConfig& samples) {
  return detail::preimage_decomposition(ctx.map(), ctx.region(), ctx.lambda(),
                                        ctx.delta(), ctx.mu(), target, samples);
}

}  // namespace padyn

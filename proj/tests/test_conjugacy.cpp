#include <doctest.h>

#include <optional>
#include <thread>

#include "padyn/conjugacy.hpp"
#include "padyn/symbolic.hpp"
#include "test_support.hpp"

using namespace padyn;
using testsup::from_q;

namespace {

Polynomial F_map(int64_t p) {
  return Polynomial::from_rationals(
      p, {0, mpq_class(-1, static_cast<long>(p)), mpq_class(1, static_cast<long>(p))}, 80);
}

Region F_region(int64_t p) {
  Radius r = Radius::from_power(p, -1);
  return Region::union_of_disks(
      {Disk(PadicNumber::zero(p), r), Disk(PadicNumber::from_integer(1, p, 80), r)});
}

// a Julia point of f_gamma: decode a word for J(F) and pull back through h_2
PadicNumber gamma_julia_point(const ItineraryWord& w, int64_t p) {
  return from_F_coordinates(decode(w, p).center());
}

}  // namespace

TEST_CASE("neighborhood_check accepts f and enforces tau") {
  PadicNumber gamma = coding_parameter(3);
  Polynomial fg = power_family_map(2, gamma);
  ExpansionContext ctx = ExpansionContext::build(
      fg, Region::sphere(Radius::from_power(3, 1)), Radius::one(3));

  ConjugacyProblem trivial = neighborhood_check(fg, fg, ctx);
  CHECK(trivial.drift <= Radius::from_power(3, -60));

  // tau(0) = 1 with delta = 1: the offset must have |eps| < 1
  Polynomial g1 = power_family_map(2, gamma + PadicNumber::from_integer(1, 3, 80));
  CHECK_THROWS_AS((void)neighborhood_check(fg, g1, ctx), certification_error);
  Polynomial g3 = power_family_map(2, gamma + PadicNumber::from_integer(3, 3, 80));
  ConjugacyProblem ok = neighborhood_check(fg, g3, ctx);
  CHECK(ok.drift == Radius::from_power(3, -1));

  CHECK_THROWS_AS((void)neighborhood_check(fg, Polynomial::from_rationals(3, {1, 0, 0, 1}, 80), ctx),
                  math_domain_error);
}

TEST_CASE("conjugate_point is the identity for g = f") {
  ExpansionContext ctx = ExpansionContext::build(F_map(3), F_region(3));
  ConjugacyProblem problem = neighborhood_check(F_map(3), F_map(3), ctx);
  PadicNumber z = PadicNumber::zero(3);
  PadicNumber h = conjugate_point(problem, z, Radius::from_power(3, -10));
  PadicNumber d = h - z;
  CHECK((d.is_exact_zero() || d.norm_upper_bound() <= Radius::from_power(3, -10)));
}

TEST_CASE("power family instance: fixed points transport to fixed points") {
  PadicNumber gamma = coding_parameter(3);
  PadicNumber eps = PadicNumber::from_integer(3, 3, 80);  // |eps| = 1/3
  ConjugacyProblem problem = power_family_conjugacy(2, gamma, gamma + eps);
  CHECK(problem.lambda == Radius::from_power(3, 1));
  CHECK(problem.ctx.region().sphere_radius() == Radius::from_power(3, 1));

  Radius target = Radius::from_power(3, -10);
  // the two fixed points of f_gamma transport to the two fixed points of g
  Radius inner = target / problem.lambda;
  ShadowingTrace trace;
  PadicNumber h1 = conjugate_point(problem, from_q(mpq_class(7, 6), 3, 80), inner, &trace);
  PadicNumber r1 = problem.g.evaluate(h1) - h1;
  CHECK(r1.norm_upper_bound() <= target);
  PadicNumber h2 = conjugate_point(problem, from_q(mpq_class(-1, 6), 3, 80), inner);
  PadicNumber r2 = problem.g.evaluate(h2) - h2;
  CHECK(r2.norm_upper_bound() <= target);
  // distinct fixed points stay distinct: |7/6 - (-1/6)| = |4/3| = 3 and each
  // image moved by at most mu/lambda = 1/3
  PadicNumber gap = h1 - h2;
  REQUIRE(gap.is_regular());
  CHECK(gap.norm() == Radius::from_power(3, 1));

  // contraction ledger
  CHECK(trace.depth == static_cast<int64_t>(trace.steps.size()));
  for (const auto& step : trace.steps) {
    CHECK(step.correction_norm <= step.bound);
    CHECK(step.bound == problem.ctx.mu() / problem.lambda.pow(step.level + 1));
  }
  CHECK(trace.certified_error < target);
  CHECK(trace.backward_values.size() == trace.steps.size() + 1);
  // total movement within mu / lambda
  PadicNumber total = h1 - from_q(mpq_class(7, 6), 3, 80);
  CHECK(total.norm_upper_bound() <= problem.ctx.mu() / problem.lambda);
}

TEST_CASE("depth overshoot does not change the value") {
  PadicNumber gamma = coding_parameter(3);
  PadicNumber eps = PadicNumber::from_integer(3, 3, 80);  // |eps| = 1/3
  ConjugacyProblem problem = power_family_conjugacy(2, gamma, gamma + eps);
  Radius target = Radius::from_power(3, -10);
  ItineraryWord w = ItineraryWord::parse("0110101");
  PadicNumber z = gamma_julia_point(w, 3);
  PadicNumber a = conjugate_point(problem, z, target);
  PadicNumber b = conjugate_point(problem, z, target / problem.lambda.pow(5));
  CHECK(shadowing_depth(problem, target) + 5 ==
        shadowing_depth(problem, target / problem.lambda.pow(5)));
  PadicNumber d = a - b;
  CHECK((d.is_exact_zero() || d.norm_upper_bound() <= target));
}

TEST_CASE("semiconjugacy holds along orbits") {
  PadicNumber gamma = coding_parameter(3);
  PadicNumber eps = PadicNumber::from_integer(3, 3, 80);  // |eps| = 1/3
  ConjugacyProblem problem = power_family_conjugacy(2, gamma, gamma + eps);
  Radius target = Radius::from_power(3, -10);

  CHECK(verify_semiconjugacy(problem, from_q(mpq_class(7, 6), 3, 80), target));
  for (const char* bits : {"0011", "1101", "0100"}) {
    PadicNumber z = gamma_julia_point(ItineraryWord::parse(bits), 3);
    CHECK(verify_semiconjugacy(problem, z, target));
    // a weaker target is still satisfied
    CHECK(verify_semiconjugacy(problem, z, Radius::from_power(3, -4)));
  }
}

TEST_CASE("orbit escape is a typed failure with its step") {
  PadicNumber gamma = coding_parameter(3);
  PadicNumber eps = PadicNumber::from_integer(3, 3, 80);  // |eps| = 1/3
  ConjugacyProblem problem = power_family_conjugacy(2, gamma, gamma + eps);
  // |1/3| = 3 puts the point on the sphere, but its second image leaves it
  try {
    (void)conjugate_point(problem, from_q(mpq_class(1, 3), 3, 80),
                          Radius::from_power(3, -10));
    FAIL("expected orbit_escape_error");
  } catch (const orbit_escape_error& e) {
    CHECK(e.step() == 2);
  }
  // |2| = 1: not on the sphere at all
  try {
    (void)conjugate_point(problem, PadicNumber::from_integer(2, 3, 80),
                          Radius::from_power(3, -10));
    FAIL("expected orbit_escape_error");
  } catch (const orbit_escape_error& e) {
    CHECK(e.step() == 0);
  }
}

TEST_CASE("injectivity on separated Julia points") {
  PadicNumber gamma = coding_parameter(3);
  PadicNumber eps = PadicNumber::from_integer(3, 3, 80);  // |eps| = 1/3
  ConjugacyProblem problem = power_family_conjugacy(2, gamma, gamma + eps);
  Radius target = Radius::from_power(3, -10);
  std::vector<ItineraryWord> words = {
      ItineraryWord::parse("0010"), ItineraryWord::parse("0110"),
      ItineraryWord::parse("1010"), ItineraryWord::parse("1111")};
  std::vector<PadicNumber> points, images;
  for (const auto& w : words) {
    points.push_back(gamma_julia_point(w, 3));
    images.push_back(conjugate_point(problem, points.back(), target));
  }
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      PadicNumber sep = points[i] - points[j];
      REQUIRE(sep.is_regular());
      REQUIRE(sep.norm() > target * Radius::from_power(3, 1));
      PadicNumber d = images[i] - images[j];
      REQUIRE(d.is_regular());
      CHECK(d.norm() > Radius::from_power(3, -10));
    }
}

TEST_CASE("reverse conjugacy inverts within 2 target") {
  PadicNumber gamma = coding_parameter(3);
  PadicNumber eps = PadicNumber::from_integer(3, 3, 80);  // |eps| = 1/3
  ConjugacyProblem forward = power_family_conjugacy(2, gamma, gamma + eps);
  ConjugacyProblem backward = reverse(forward);
  Radius target = Radius::from_power(3, -12);
  for (const char* bits : {"0101", "1001"}) {
    PadicNumber z = gamma_julia_point(ItineraryWord::parse(bits), 3);
    PadicNumber hz = conjugate_point(forward, z, target);
    PadicNumber back = conjugate_point(backward, hz, target);
    PadicNumber d = back - z;
    CHECK(d.norm_upper_bound() <= target * Radius::from_power(3, 1));
  }
}

TEST_CASE("repelling fixed points") {
  // F fixes 0 and 1+p, both repelling with |F'| = p
  PadicNumber r = find_repelling_fixed_point(F_map(3), F_region(3));
  CHECK((r.is_exact_zero() || r.is_near_zero() || r.valuation() >= 1));

  // f_c on its sphere: a fixed point of norm |c|^{1/d}
  Polynomial fg = power_family_map(2, coding_parameter(3));
  Region sphere = Region::sphere(Radius::from_power(3, 1));
  PadicNumber w = find_repelling_fixed_point(fg, sphere);
  CHECK(w.norm() == Radius::from_power(3, 1));
  PadicNumber resid = fg.evaluate(w) - w;
  CHECK_FALSE(resid.is_regular());

  // z^2 at p = 5 on |z| = 1: the fixed point 1 is not repelling
  Polynomial sq = Polynomial::from_rationals(5, {0, 0, 1}, 80);
  CHECK_THROWS_AS((void)find_repelling_fixed_point(sq, Region::sphere(Radius::one(5))),
                  math_domain_error);
}

TEST_CASE("power family preconditions") {
  PadicNumber gamma = coding_parameter(3);
  // identity instance
  ConjugacyProblem id = power_family_conjugacy(2, gamma, gamma);
  PadicNumber z = from_q(mpq_class(7, 6), 3, 80);
  PadicNumber h = conjugate_point(id, z, Radius::from_power(3, -10));
  CHECK((h - z).norm_upper_bound() <= Radius::from_power(3, -10));

  // p | d
  PadicNumber c2 = PadicNumber::from_rational(1, 4, 2, 80);
  CHECK_THROWS_AS((void)power_family_conjugacy(2, c2, c2), math_domain_error);
  // no escape
  PadicNumber small = PadicNumber::from_integer(1, 3, 80);
  CHECK_THROWS_AS((void)power_family_conjugacy(2, small, small), math_domain_error);
  // perturbation too large: |c - c2| = |c|^{1/2} exactly (boundary case)
  PadicNumber cc = from_q(mpq_class(1, 9), 3, 80);
  PadicNumber boundary = cc + from_q(mpq_class(1, 3), 3, 80);
  CHECK_THROWS_AS((void)power_family_conjugacy(2, cc, boundary), certification_error);
  // and strictly beyond the sphere radius
  PadicNumber far = cc + from_q(mpq_class(1, 27), 3, 80);
  CHECK_THROWS_AS((void)power_family_conjugacy(2, cc, far), certification_error);
}

TEST_CASE("fixed point transport across degrees and primes") {
  struct Case {
    int64_t p, d;
    mpq_class c, fixed, eps;
  };
  // c = w - w^d makes w an exact fixed point of z^d + c on the sphere
  std::vector<Case> cases = {
      {3, 2, mpq_class(-7, 36), mpq_class(7, 6), mpq_class(3)},
      {5, 2, mpq_class(-6, 25), mpq_class(6, 5), mpq_class(5)},
      {3, 4, mpq_class(26, 81), mpq_class(1, 3), mpq_class(1)},
      {5, 4, mpq_class(124, 625), mpq_class(1, 5), mpq_class(1)},
  };
  for (const auto& cs : cases) {
    CAPTURE(cs.p);
    CAPTURE(cs.d);
    PadicNumber c = from_q(cs.c, cs.p, 80);
    PadicNumber c2 = c + from_q(cs.eps, cs.p, 80);
    ConjugacyProblem problem = power_family_conjugacy(cs.d, c, c2);
    PadicNumber w = from_q(cs.fixed, cs.p, 80);
    // w really is a fixed point of f_c on the sphere
    REQUIRE_FALSE((problem.f.evaluate(w) - w).is_regular());
    REQUIRE(w.norm() == c.norm().root(cs.d));
    Radius target = Radius::from_power(cs.p, -10);
    PadicNumber hw = conjugate_point(problem, w, target / problem.lambda.pow(2));
    PadicNumber resid = problem.g.evaluate(hw) - hw;
    CHECK(resid.norm_upper_bound() <= target);
  }
}

TEST_CASE("pointwise evaluation is safe to run concurrently") {
  PadicNumber gamma = coding_parameter(3);
  PadicNumber eps = PadicNumber::from_integer(3, 3, 80);
  ConjugacyProblem problem = power_family_conjugacy(2, gamma, gamma + eps);
  Radius target = Radius::from_power(3, -10);
  std::vector<PadicNumber> points;
  std::vector<const char*> words = {"0010", "0110", "1010", "1111"};
  for (const char* w : words)
    points.push_back(gamma_julia_point(ItineraryWord::parse(w), 3));

  std::vector<PadicNumber> serial;
  for (const auto& z : points) serial.push_back(conjugate_point(problem, z, target));

  std::vector<std::optional<PadicNumber>> parallel(points.size());
  std::vector<std::thread> workers;
  for (size_t i = 0; i < points.size(); ++i)
    workers.emplace_back([&, i] { parallel[i] = conjugate_point(problem, points[i], target); });
  for (auto& t : workers) t.join();

  for (size_t i = 0; i < points.size(); ++i) {
    REQUIRE(parallel[i].has_value());
    PadicNumber d = *parallel[i] - serial[i];
    CHECK((d.is_exact_zero() || d.norm_upper_bound() <= target));
  }
}

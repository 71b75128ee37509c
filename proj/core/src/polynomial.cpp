#include "padyn/polynomial.hpp"

#include <algorithm>
#include <optional>

namespace padyn {

Polynomial::Polynomial(std::vector<PadicNumber> coefficients)
    : prime_(0), coeff_(std::move(coefficients)) {
  if (coeff_.empty()) throw math_domain_error("polynomial needs coefficients");
  prime_ = coeff_.front().prime();
  for (const PadicNumber& c : coeff_)
    if (c.prime() != prime_)
      throw math_domain_error("polynomial coefficients have different primes");
  while (coeff_.size() > 1 && coeff_.back().is_exact_zero()) coeff_.pop_back();
  if (coeff_.back().is_near_zero())
    throw precision_error(
        "leading coefficient is zero at the known precision; degree undecidable");
  if (coeff_.back().is_exact_zero())
    throw math_domain_error("the zero polynomial has no degree");
}

Polynomial Polynomial::from_rationals(int64_t prime,
                                      const std::vector<mpq_class>& cs,
                                      int64_t rel_precision) {
  std::vector<PadicNumber> out;
  out.reserve(cs.size());
  for (const mpq_class& q : cs)
    out.push_back(PadicNumber::from_rational(q.get_num(), q.get_den(), prime,
                                             rel_precision));
  return Polynomial(std::move(out));
}

const PadicNumber& Polynomial::coeff(int64_t k) const {
  if (k < 0 || k > degree())
    throw math_domain_error("coefficient index out of range");
  return coeff_[static_cast<size_t>(k)];
}

PadicNumber Polynomial::evaluate(const PadicNumber& z) const {
  if (z.prime() != prime_) throw math_domain_error("prime mismatch");
  PadicNumber acc = coeff_.back();
  for (int64_t k = degree() - 1; k >= 0; --k) acc = acc * z + coeff_[static_cast<size_t>(k)];
  return acc;
}

Polynomial Polynomial::taylor_shift(const PadicNumber& z0) const {
  if (z0.prime() != prime_) throw math_domain_error("prime mismatch");
  if (z0.is_exact_zero()) return *this;
  std::vector<PadicNumber> g = coeff_;
  const int64_t d = degree();
  for (int64_t k = 0; k < d; ++k)
    for (int64_t j = d - 1; j >= k; --j)
      g[static_cast<size_t>(j)] =
          g[static_cast<size_t>(j)] + g[static_cast<size_t>(j + 1)] * z0;
  return Polynomial(std::move(g));
}

Polynomial Polynomial::derivative() const {
  if (degree() == 0)
    throw math_domain_error("derivative of a constant is the zero polynomial");
  std::vector<PadicNumber> g;
  g.reserve(static_cast<size_t>(degree()));
  for (int64_t k = 1; k <= degree(); ++k)
    g.push_back(coeff_[static_cast<size_t>(k)].mul_integer(mpz_class(static_cast<long>(k))));
  return Polynomial(std::move(g));
}

Polynomial Polynomial::perturb(int64_t i, const PadicNumber& eps) const {
  if (i < 0 || i > degree())
    throw math_domain_error("perturbation index must satisfy 0 <= i <= d");
  if (eps.prime() != prime_) throw math_domain_error("prime mismatch");
  std::vector<PadicNumber> g = coeff_;
  g[static_cast<size_t>(i)] = g[static_cast<size_t>(i)] + eps;
  return Polynomial(std::move(g));
}

std::string Polynomial::str() const {
  std::string out;
  for (int64_t k = 0; k <= degree(); ++k) {
    if (k) out += " + ";
    out += coeff_[static_cast<size_t>(k)].str();
    if (k == 1) out += "*z";
    if (k > 1) out += "*z^" + std::to_string(k);
  }
  return out;
}

std::vector<PolygonTerm> newton_polygon_profile(const Polynomial& f,
                                                const Radius& r) {
  if (r.is_zero()) throw math_domain_error("polygon radius must be positive");
  if (r.prime() != f.prime()) throw math_domain_error("prime mismatch");
  std::vector<PolygonTerm> out;
  const mpq_class& q = r.vexp();
  for (int64_t k = 0; k <= f.degree(); ++k) {
    const PadicNumber& c = f.coeff(k);
    PolygonTerm t;
    t.index = k;
    if (c.is_exact_zero()) {
      t.exact_zero = true;
    } else if (c.is_near_zero()) {
      t.upper_bound = true;
      t.wexp = mpq_class(static_cast<long>(c.abs_precision())) + mpq_class(k) * q;
    } else {
      t.wexp = mpq_class(static_cast<long>(c.valuation())) + mpq_class(k) * q;
    }
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

// l = largest index attaining the maximal term norm, with undecidable
// apparent-zero terms reported.
int64_t polygon_max_index(const std::vector<PolygonTerm>& profile) {
  std::optional<mpq_class> min_w;
  int64_t l = -1;
  for (const PolygonTerm& t : profile) {
    if (t.exact_zero || t.upper_bound) continue;
    if (!min_w || t.wexp < *min_w) {
      min_w = t.wexp;
      l = t.index;
    } else if (t.wexp == *min_w) {
      l = t.index;
    }
  }
  // the leading coefficient is always a known term
  for (const PolygonTerm& t : profile) {
    if (!t.upper_bound) continue;
    // |term| <= p^{-t.wexp}; harmless iff strictly below the max, or tied
    // at an index that cannot raise l
    if (t.wexp > *min_w) continue;
    if (t.wexp == *min_w && t.index < l) continue;
    throw precision_error(
        "root count undecidable: coefficient " + std::to_string(t.index) +
        " is only known to be O(p^" + t.wexp.get_str() +
        ") against the maximal term p^-" + min_w->get_str() +
        "; increase the working precision");
  }
  return l;
}

}  // namespace

int64_t newton_root_count(const Polynomial& f, const Disk& disk) {
  Polynomial g = f.taylor_shift(disk.center());
  return polygon_max_index(newton_polygon_profile(g, disk.radius()));
}

PadicNumber unique_root_in_disk(const Polynomial& f, const Disk& disk) {
  int64_t l = newton_root_count(f, disk);
  if (l != 1)
    throw certification_error("unique_root_in_disk requires root count 1, got " +
                              std::to_string(l) + " in " + disk.str());
  const Polynomial fp = f.derivative();
  PadicNumber z = disk.center();
  std::optional<Radius> last_step;
  for (int iter = 0; iter < 256; ++iter) {
    PadicNumber fz = f.evaluate(z);
    if (!fz.is_regular()) {
      // residual zero at the working precision: certify and truncate to the
      // certified accuracy
      if (!disk.contains(z))
        throw certification_error("computed root left the disk " + disk.str());
      if (fz.is_exact_zero()) return z;
      PadicNumber fpz = fp.evaluate(z);
      if (!fpz.is_regular())
        throw precision_error("derivative indistinguishable from zero at the root");
      int64_t acc = fz.abs_precision() - fpz.valuation();
      if (z.is_regular() && acc < z.abs_precision()) {
        if (acc <= z.valuation())
          throw precision_error("root accuracy below its valuation; increase precision");
        return z.truncate_abs(acc);
      }
      return z;
    }
    PadicNumber fpz = fp.evaluate(z);
    if (!fpz.is_regular())
      throw precision_error("|f'| indistinguishable from zero during Newton iteration");
    PadicNumber step = fz / fpz;
    if (last_step && !(step.norm() < *last_step))
      throw certification_error(
          "Newton iteration stopped contracting (step " + step.norm().str() +
          " after " + last_step->str() + "); dominance precondition violated");
    last_step = step.norm();
    z = z - step;
    if (!disk.contains(z))
      throw certification_error(
          "Newton iteration left the disk " + disk.str() +
          "; the unique root is not where the count certified it");
  }
  throw precision_error("Newton iteration did not converge within the digit budget");
}

RootIsolation isolate_roots(const Polynomial& f, const Disk& disk,
                            int64_t max_subdivision_depth) {
  RootIsolation out;
  out.total = newton_root_count(f, disk);
  if (out.total == 0) return out;
  const int64_t p = f.prime();

  // Q_p points of the disk coincide with those of the integral shrink.
  const mpq_class& q = disk.radius().vexp();
  mpz_class m0z;
  mpz_cdiv_q(m0z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  int64_t m0 = static_cast<int64_t>(m0z.get_si());

  struct Node {
    PadicNumber center;
    int64_t m;
    int64_t count;
  };

  int64_t base_count =
      newton_root_count(f, Disk(disk.center(), Radius::from_valuation(p, static_cast<long>(m0))));
  out.outside_qp += out.total - base_count;

  // depth-first, children in residue order: deterministic output
  std::vector<Node> stack;
  if (base_count > 0)
    stack.push_back({disk.center(), m0, base_count});
  while (!stack.empty()) {
    Node n = stack.back();
    stack.pop_back();
    if (n.count == 1) {
      out.isolated.emplace_back(n.center, Radius::from_valuation(p, static_cast<long>(n.m)));
      continue;
    }
    if (n.m - m0 > max_subdivision_depth)
      throw precision_error("root isolation exceeded the subdivision depth budget");
    int64_t found = 0;
    std::vector<Node> children;
    for (int64_t j = 0; j < p; ++j) {
      PadicNumber cj =
          n.center + PadicNumber::from_integer(mpz_class(static_cast<long>(j)),
                                               p, kDefaultRelPrecision + kGuardDigits)
                         .mul_pow_p(n.m);
      Disk child(cj, Radius::from_valuation(p, static_cast<long>(n.m + 1)));
      int64_t c = newton_root_count(f, child);
      if (c > 0) {
        children.push_back({std::move(cj), n.m + 1, c});
        found += c;
      }
    }
    out.outside_qp += n.count - found;
    // reversed push keeps residue order on the stack
    for (auto it = children.rbegin(); it != children.rend(); ++it)
      stack.push_back(std::move(*it));
  }
  return out;
}

}  // namespace padyn

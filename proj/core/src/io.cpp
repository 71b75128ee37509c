#include "padyn/io.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace padyn {

namespace {

std::string strip(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

mpz_class parse_mpz(const std::string& s) {
  if (s.empty()) throw math_domain_error("empty integer literal");
  mpz_class z;
  if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
    throw math_domain_error("invalid integer literal '" + s + "'");
  return z;
}

mpq_class parse_mpq(const std::string& s) {
  std::string t = strip(s);
  size_t slash = t.find('/');
  if (slash == std::string::npos) return mpq_class(parse_mpz(t));
  mpz_class num = parse_mpz(t.substr(0, slash));
  mpz_class den = parse_mpz(t.substr(slash + 1));
  if (den == 0) throw math_domain_error("zero denominator in '" + s + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

PadicNumber parse_padic_literal(const std::string& text, int64_t prime,
                                int64_t rel_precision) {
  std::string t = strip(text);
  if (t.empty()) throw math_domain_error("empty p-adic literal");
  size_t star = t.find('*');
  if (star == std::string::npos) {
    mpq_class q = parse_mpq(t);
    return PadicNumber::from_rational(q.get_num(), q.get_den(), prime,
                                      rel_precision);
  }
  // digit form: d0.d1.d2...*p^v
  std::string digits = strip(t.substr(0, star));
  std::string tail = strip(t.substr(star + 1));
  size_t caret = tail.find('^');
  if (caret == std::string::npos)
    throw math_domain_error("digit literal needs '*p^v' tail: '" + text + "'");
  mpz_class base = parse_mpz(tail.substr(0, caret));
  if (base != static_cast<long>(prime))
    throw math_domain_error("literal base " + base.get_str() +
                            " does not match the working prime " +
                            std::to_string(prime));
  long v = static_cast<long>(parse_mpz(tail.substr(caret + 1)).get_si());
  mpz_class unit(0), pw(1);
  size_t pos = 0;
  bool any = false;
  while (pos <= digits.size()) {
    size_t dot = digits.find('.', pos);
    std::string dstr = dot == std::string::npos ? digits.substr(pos)
                                                : digits.substr(pos, dot - pos);
    mpz_class d = parse_mpz(dstr);
    if (d < 0 || d >= static_cast<long>(prime))
      throw math_domain_error("digit " + d.get_str() + " out of range for base " +
                              std::to_string(prime));
    unit += d * pw;
    pw *= static_cast<long>(prime);
    any = true;
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  if (!any) throw math_domain_error("digit literal has no digits: '" + text + "'");
  if (unit == 0) return PadicNumber::zero(prime);
  return PadicNumber::from_integer(unit, prime, rel_precision).mul_pow_p(v);
}

Radius parse_radius_literal(const std::string& text, int64_t prime) {
  std::string t = strip(text);
  if (t == "0") return Radius::zero(prime);
  size_t caret = t.find('^');
  if (caret == std::string::npos)
    throw math_domain_error("radius literal must be 'p^q' or '0': '" + text + "'");
  mpz_class base = parse_mpz(t.substr(0, caret));
  if (base != static_cast<long>(prime))
    throw math_domain_error("radius base " + base.get_str() +
                            " does not match the working prime " +
                            std::to_string(prime));
  return Radius::from_power(prime, parse_mpq(t.substr(caret + 1)));
}

Polynomial parse_polynomial(const std::string& text, int64_t prime,
                            int64_t rel_precision) {
  // split into signed terms at top level (whitespace is irrelevant)
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw math_domain_error("empty polynomial");
  struct Term {
    std::string body;
    bool negative;
  };
  std::vector<Term> terms;
  size_t pos = 0;
  while (pos < t.size()) {
    bool neg = false;
    while (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
      if (t[pos] == '-') neg = !neg;
      ++pos;
    }
    size_t start = pos;
    while (pos < t.size()) {
      char c = t[pos];
      // a sign right after '^', '*' or '/' belongs to an exponent/literal
      if ((c == '+' || c == '-') && pos > start && t[pos - 1] != '^' &&
          t[pos - 1] != '*' && t[pos - 1] != '/')
        break;
      ++pos;
    }
    std::string body = t.substr(start, pos - start);
    if (body.empty()) throw math_domain_error("empty term in polynomial");
    terms.push_back({std::move(body), neg});
  }

  std::vector<PadicNumber> coeffs;
  auto grow = [&](int64_t k) {
    while (static_cast<int64_t>(coeffs.size()) <= k)
      coeffs.push_back(PadicNumber::zero(prime));
  };
  for (const Term& term : terms) {
    // factors split on '*'; a 'z' or 'z^k' factor fixes the power, the rest
    // (re-joined on '*') is the coefficient literal
    std::vector<std::string> parts;
    size_t p0 = 0;
    while (true) {
      size_t st = term.body.find('*', p0);
      parts.push_back(strip(term.body.substr(p0, st == std::string::npos
                                                     ? std::string::npos
                                                     : st - p0)));
      if (st == std::string::npos) break;
      p0 = st + 1;
    }
    int64_t power = 0;
    std::string coeff_text;
    for (const std::string& part : parts) {
      if (!part.empty() && (part[0] == 'z' || part[0] == 'Z')) {
        if (part.size() == 1)
          power = 1;
        else if (part[1] == '^')
          power = static_cast<int64_t>(parse_mpz(part.substr(2)).get_si());
        else
          throw math_domain_error("bad variable factor '" + part + "'");
        if (power < 0) throw math_domain_error("negative powers of z not allowed");
      } else {
        if (!coeff_text.empty()) coeff_text += "*";
        coeff_text += part;
      }
    }
    PadicNumber c = coeff_text.empty()
                        ? PadicNumber::from_integer(mpz_class(1), prime, rel_precision)
                        : parse_padic_literal(coeff_text, prime, rel_precision);
    if (term.negative) c = -c;
    grow(power);
    coeffs[static_cast<size_t>(power)] = coeffs[static_cast<size_t>(power)] + c;
  }
  return Polynomial(std::move(coeffs));
}

Region parse_region(const std::string& text, int64_t prime, int64_t rel_precision) {
  std::string t = strip(text);
  if (t.rfind("sphere:", 0) == 0)
    return Region::sphere(parse_radius_literal(t.substr(7), prime));
  if (t.rfind("disks:", 0) != 0)
    throw math_domain_error("region must be 'disks:[...]' or 'sphere:p^q'");
  std::string body = strip(t.substr(6));
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw math_domain_error("disks region needs a [...] list");
  body = body.substr(1, body.size() - 2);
  std::vector<Disk> disks;
  size_t pos = 0;
  while (pos < body.size()) {
    size_t open = body.find('(', pos);
    if (open == std::string::npos) break;
    size_t close = body.find(')', open);
    if (close == std::string::npos)
      throw math_domain_error("unbalanced parentheses in region");
    std::string pair = body.substr(open + 1, close - open - 1);
    size_t comma = pair.rfind(',');
    if (comma == std::string::npos)
      throw math_domain_error("disk needs '(center, p^q)'");
    disks.emplace_back(
        parse_padic_literal(pair.substr(0, comma), prime, rel_precision),
        parse_radius_literal(pair.substr(comma + 1), prime));
    pos = close + 1;
  }
  if (disks.empty()) throw math_domain_error("region has no disks");
  return Region::union_of_disks(std::move(disks));
}

}  // namespace padyn

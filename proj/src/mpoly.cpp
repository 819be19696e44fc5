#include "dpz/mpoly.hpp"

#include <cctype>
#include <sstream>

namespace dpz {

std::string MPoly::str(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms) {
    mpq_class cc = c;
    if (!first) {
      os << (cc < 0 ? " - " : " + ");
      if (cc < 0) cc = -cc;
    } else {
      if (cc < 0) {
        os << "-";
        cc = -cc;
      }
      first = false;
    }
    bool has_var = false;
    for (int x : e)
      if (x) has_var = true;
    if (cc != 1 || !has_var) os << q_str(cc);
    bool star = (cc != 1 || !has_var);
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (star) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      star = true;
    }
  }
  return os.str();
}

namespace {

// view an MPoly as univariate in variable v with MPoly coefficients
std::vector<MPoly> as_univariate(const MPoly& a, int v) {
  std::vector<MPoly> coeffs(std::max(0, a.degree_in(v)) + 1, MPoly(a.nvars, a.chr));
  if (a.is_zero()) return coeffs;
  for (auto& [e, c] : a.terms) {
    std::vector<int> e2 = e;
    int d = e2[v];
    e2[v] = 0;
    coeffs[d].add_term(e2, c);
  }
  return coeffs;
}

MPoly from_univariate(const std::vector<MPoly>& coeffs, int v, int nvars, Int chr) {
  MPoly r(nvars, chr);
  for (size_t d = 0; d < coeffs.size(); ++d)
    for (auto& [e, c] : coeffs[d].terms) {
      std::vector<int> e2 = e;
      e2[v] += (int)d;
      r.add_term(e2, c);
    }
  return r;
}

int udeg(const std::vector<MPoly>& u) {
  for (int d = (int)u.size() - 1; d >= 0; --d)
    if (!u[d].is_zero()) return d;
  return -1;
}

// gcd of univariate polynomials over the coefficient FIELD (coefficients are
// constants, i.e. nvars-0 content already handled by caller)
MPoly gcd_univariate_field(const MPoly& a, const MPoly& b, int v) {
  MPoly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    // r0 mod r1 by field division on leading terms
    auto u0 = as_univariate(r0, v), u1 = as_univariate(r1, v);
    int d0 = udeg(u0), d1 = udeg(u1);
    while (d0 >= d1 && d0 >= 0) {
      mpq_class lc0 = u0[d0].leading_coeff(), lc1 = u1[d1].leading_coeff();
      mpq_class f;
      if (a.chr == 0)
        f = lc0 / lc1;
      else {
        Int n = mod_reduce(lc0.get_num().get_si(), a.chr);
        Int m = mod_reduce(lc1.get_num().get_si(), a.chr);
        f = mpq_class(mul_mod(n, inv_mod(m, a.chr), a.chr));
      }
      for (int i = 0; i <= d1; ++i) {
        MPoly t = u1[i].scaled(f);
        u0[i + d0 - d1] = u0[i + d0 - d1] - t;
      }
      d0 = udeg(u0);
    }
    r0 = r1;
    r1 = from_univariate(u0, v, a.nvars, a.chr);
  }
  if (!r0.is_zero()) r0 = r0.scaled(1 / r0.leading_coeff());
  return r0;
}

MPoly content_wrt(const MPoly& a, int v);

// gcd in k[x,y]: content/primitive-part split w.r.t. the main variable,
// primitive PRS on the primitive parts.
MPoly gcd_bivariate(const MPoly& a, const MPoly& b, int v) {
  MPoly ca = content_wrt(a, v), cb = content_wrt(b, v);
  MPoly pa = mpoly_divexact(a, ca), pb = mpoly_divexact(b, cb);
  MPoly cg = mpoly_gcd(ca, cb);  // univariate in the other variable

  MPoly r0 = pa, r1 = pb;
  if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);
  while (!r1.is_zero()) {
    // pseudo-remainder of r0 by r1 in variable v
    auto u0 = as_univariate(r0, v), u1 = as_univariate(r1, v);
    int d0 = udeg(u0), d1 = udeg(u1);
    MPoly lc1 = u1[d1];
    while (d0 >= d1 && d0 >= 0) {
      MPoly lc0 = u0[d0];
      for (int i = 0; i <= d0; ++i) u0[i] = u0[i] * lc1;
      for (int i = 0; i <= d1; ++i) u0[i + d0 - d1] = u0[i + d0 - d1] - u1[i] * lc0;
      d0 = udeg(u0);
    }
    MPoly rem = from_univariate(u0, v, a.nvars, a.chr);
    if (!rem.is_zero()) rem = mpoly_divexact(rem, content_wrt(rem, v));
    r0 = r1;
    r1 = rem;
  }
  MPoly g = cg * r0;
  if (!g.is_zero()) g = g.scaled(1 / g.leading_coeff());
  return g;
}

MPoly content_wrt(const MPoly& a, int v) {
  auto u = as_univariate(a, v);
  MPoly g(a.nvars, a.chr);
  for (auto& c : u)
    if (!c.is_zero()) g = g.is_zero() ? c : mpoly_gcd(g, c);
  if (g.is_zero()) g = MPoly::constant(a.nvars, a.chr, 1);
  return g;
}

std::vector<int> exp_min(const MPoly& a) {
  std::vector<int> m(a.nvars, 1 << 20);
  for (auto& [e, c] : a.terms)
    for (int i = 0; i < a.nvars; ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

}  // namespace

MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // count variables actually present
  std::vector<int> present;
  for (int v = 0; v < a.nvars; ++v)
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0) present.push_back(v);
  if (present.empty()) return MPoly::constant(a.nvars, a.chr, 1);
  if (present.size() == 1) {
    MPoly g = gcd_univariate_field(a, b, present[0]);
    return g;
  }
  if (present.size() == 2) return gcd_bivariate(a, b, present[0]);
  // >2 variables: monomial content only (enough for canonical-but-uncancelled
  // fractions; equality stays decidable via cross-multiplication)
  std::vector<int> ma = exp_min(a), mb = exp_min(b);
  MPoly g(a.nvars, a.chr);
  std::vector<int> e(a.nvars);
  for (int i = 0; i < a.nvars; ++i) e[i] = std::min(ma[i], mb[i]);
  g.add_term(e, 1);
  return g;
}

bool mpoly_try_divide(const MPoly& a, const MPoly& b, MPoly& quot) {
  if (b.is_zero()) return false;
  MPoly r = a;
  MPoly q(a.nvars, a.chr);
  auto lead = b.terms.begin();
  while (!r.is_zero()) {
    auto rl = r.terms.begin();
    std::vector<int> e(a.nvars);
    for (int i = 0; i < a.nvars; ++i) {
      e[i] = rl->first[i] - lead->first[i];
      if (e[i] < 0) return false;
    }
    mpq_class c;
    if (a.chr == 0)
      c = rl->second / lead->second;
    else {
      Int n = mod_reduce(rl->second.get_num().get_si(), a.chr);
      Int m = mod_reduce(lead->second.get_num().get_si(), a.chr);
      c = mpq_class(mul_mod(n, inv_mod(m, a.chr), a.chr));
    }
    MPoly t(a.nvars, a.chr);
    t.add_term(e, c);
    q = q + t;
    r = r - t * b;
  }
  quot = q;
  return true;
}

MPoly mpoly_divexact(const MPoly& a, const MPoly& b) {
  MPoly q;
  if (!mpoly_try_divide(a, b, q)) fail("NotDivisible", "mpoly_divexact");
  return q;
}

void MFrac::canon() {
  if (den.is_zero()) fail("DivisionByZero", "zero denominator");
  if (num.is_zero()) {
    den = MPoly::constant(den.nvars, den.chr, 1);
    return;
  }
  MPoly g = mpoly_gcd(num, den);
  if (g.total_degree() > 0) {
    MPoly qn, qd;
    if (mpoly_try_divide(num, g, qn) && mpoly_try_divide(den, g, qd)) {
      num = qn;
      den = qd;
    }
  }
  mpq_class lc = den.leading_coeff();
  num = num.scaled(1 / lc);
  den = den.scaled(1 / lc);
}

namespace {

struct PolyParser {
  const std::string& s;
  size_t i = 0;
  const std::vector<std::string>& vars;
  int nvars;
  Int chr;

  PolyParser(const std::string& t, const std::vector<std::string>& v, Int p)
      : s(t), vars(v), nvars((int)v.size()), chr(p) {}

  void skip() {
    while (i < s.size() && isspace((unsigned char)s[i])) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  MPoly parse_expr() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    MPoly r = parse_term();
    if (neg) r = -r;
    for (;;) {
      skip();
      if (i >= s.size()) break;
      if (s[i] == '+') {
        ++i;
        r = r + parse_term();
      } else if (s[i] == '-') {
        ++i;
        r = r - parse_term();
      } else
        break;
    }
    return r;
  }

  MPoly parse_term() {
    MPoly r = parse_factor();
    for (;;) {
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        r = r * parse_factor();
      } else if (i < s.size() &&
                 (isalpha((unsigned char)s[i]) || s[i] == '(')) {
        r = r * parse_factor();  // implicit multiplication
      } else
        break;
    }
    return r;
  }

  MPoly parse_factor() {
    MPoly base = parse_atom();
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      skip();
      size_t j = i;
      while (j < s.size() && isdigit((unsigned char)s[j])) ++j;
      if (j == i) fail("ParseError", "exponent expected in '" + s + "'");
      int e = std::stoi(s.substr(i, j - i));
      i = j;
      MPoly r = MPoly::constant(nvars, chr, 1);
      for (int k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  MPoly parse_atom() {
    skip();
    if (i >= s.size()) fail("ParseError", "unexpected end of '" + s + "'");
    if (s[i] == '(') {
      ++i;
      MPoly r = parse_expr();
      if (!eat(')')) fail("ParseError", "missing ')' in '" + s + "'");
      return r;
    }
    if (isdigit((unsigned char)s[i])) {
      size_t j = i;
      while (j < s.size() && (isdigit((unsigned char)s[j]) || s[j] == '/')) ++j;
      mpq_class c = q_parse(s.substr(i, j - i));
      i = j;
      return MPoly::constant(nvars, chr, c);
    }
    if (isalpha((unsigned char)s[i])) {
      size_t j = i;
      while (j < s.size() && (isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
      std::string name = s.substr(i, j - i);
      i = j;
      for (int v = 0; v < nvars; ++v)
        if (vars[v] == name) return MPoly::variable(nvars, chr, v);
      fail("ParseError", "unknown variable '" + name + "' in '" + s + "'");
    }
    fail("ParseError", "bad character in '" + s + "'");
  }
};

}  // namespace

MPoly parse_mpoly(const std::string& text, const std::vector<std::string>& vars,
                  Int chr) {
  PolyParser p(text, vars, chr);
  MPoly r = p.parse_expr();
  p.skip();
  if (p.i != text.size()) fail("ParseError", "trailing input in '" + text + "'");
  return r;
}

}  // namespace dpz

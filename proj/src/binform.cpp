#include "dpz/binform.hpp"

#include <sstream>

namespace dpz {

P1::P1(FV a, FV b) {
  if (a.is_zero() && b.is_zero()) fail("BadPoint", "[0:0] is not a point of P^1");
  if (!a.is_zero()) {
    FV inv = fv_inv(a);
    s = FV::one(a.f);
    t = b * inv;
  } else {
    FV inv = fv_inv(b);
    s = a * inv;
    t = FV::one(b.f);
  }
}

BinForm::BinForm(FieldPtr fld, int deg) : f(std::move(fld)) {
  c.assign(deg + 1, FV::zero(f));
}

BinForm BinForm::from_coeffs(FieldPtr fld, std::vector<FV> coeffs) {
  BinForm g;
  g.f = std::move(fld);
  g.c = std::move(coeffs);
  return g;
}

BinForm BinForm::parse(const FieldPtr& fld, const std::string& text,
                       const std::string& sv, const std::string& tv) {
  std::vector<std::string> vars = {sv, tv};
  if (fld->kind == FieldKind::Ext) vars.push_back(fld->gen);
  if (fld->kind == FieldKind::RationalFunctions)
    for (auto& v : fld->vars) vars.push_back(v);
  MPoly m = parse_mpoly(text, vars, fld->characteristic());
  int d = -1;
  for (auto& [e, co] : m.terms) d = std::max(d, e[0] + e[1]);
  if (d < 0) return BinForm(fld, 0);
  BinForm g(fld, d);
  for (auto& [e, co] : m.terms) {
    if (e[0] + e[1] != d) fail("ParseError", "form is not homogeneous: " + text);
    FV coeff = FV::of_q(fld, co);
    if (fld->kind == FieldKind::Ext && e[2] > 0)
      coeff = coeff * fv_pow(FV::of_ext(fld, {0, 1}), e[2]);
    if (fld->kind == FieldKind::RationalFunctions) {
      int nv = (int)fld->vars.size();
      Int chr = fld->characteristic();
      for (int v = 0; v < nv; ++v)
        if (e[2 + v] > 0) {
          MPoly var = MPoly::variable(nv, chr, v);
          MPoly pw = MPoly::constant(nv, chr, 1);
          for (int k = 0; k < e[2 + v]; ++k) pw = pw * var;
          coeff = coeff * FV::of_frac(fld, MFrac(pw, MPoly::constant(nv, chr, 1)));
        }
    }
    g.c[e[0]] = g.c[e[0]] + coeff;
  }
  return g;
}

bool BinForm::is_zero() const {
  for (auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

FV BinForm::eval(const FV& s, const FV& t) const {
  FV acc = FV::zero(f);
  std::vector<FV> spows;
  FV spow = FV::one(f);
  for (int i = 0; i <= deg(); ++i) {
    spows.push_back(spow);
    spow = spow * s;
  }
  FV tpow = FV::one(f);
  for (int i = deg(); i >= 0; --i) {
    acc = acc + c[i] * spows[i] * tpow;
    tpow = tpow * t;
  }
  return acc;
}

BinForm BinForm::operator+(const BinForm& o) const {
  if (deg() != o.deg()) fail("DegreeMismatch", "binary form addition");
  BinForm r(f, deg());
  for (int i = 0; i <= deg(); ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

BinForm BinForm::operator-(const BinForm& o) const {
  if (deg() != o.deg()) fail("DegreeMismatch", "binary form subtraction");
  BinForm r(f, deg());
  for (int i = 0; i <= deg(); ++i) r.c[i] = c[i] - o.c[i];
  return r;
}

BinForm BinForm::operator*(const BinForm& o) const {
  BinForm r(f, deg() + o.deg());
  for (int i = 0; i <= deg(); ++i)
    for (int j = 0; j <= o.deg(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
  return r;
}

BinForm BinForm::scaled(const FV& k) const {
  BinForm r(f, deg());
  for (int i = 0; i <= deg(); ++i) r.c[i] = c[i] * k;
  return r;
}

static mpz_class binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BinForm BinForm::hasse_s(int k) const {
  if (deg() < k) return BinForm(f, 0);
  BinForm r(f, deg() - k);
  for (int i = k; i <= deg(); ++i)
    r.c[i - k] = c[i] * FV::of_q(f, mpq_class(binom(i, k)));
  return r;
}

BinForm BinForm::hasse_t(int k) const {
  if (deg() < k) return BinForm(f, 0);
  BinForm r(f, deg() - k);
  for (int i = 0; i <= deg() - k; ++i)
    r.c[i] = c[i] * FV::of_q(f, mpq_class(binom(deg() - i, k)));
  return r;
}

std::string BinForm::str(const std::string& sv, const std::string& tv) const {
  std::ostringstream os;
  bool first = true;
  for (int i = deg(); i >= 0; --i) {
    if (c[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c[i].str() << ")";
    if (i) os << "*" << sv << (i > 1 ? "^" + std::to_string(i) : "");
    if (deg() - i)
      os << "*" << tv << (deg() - i > 1 ? "^" + std::to_string(deg() - i) : "");
  }
  if (first) os << "0";
  return os.str();
}

int valuation(const BinForm& g, const P1& p) {
  if (g.is_zero()) return g.deg() + 1;
  if (p.t.is_zero()) {
    for (int i = g.deg(); i >= 0; --i)
      if (!g.c[i].is_zero()) return g.deg() - i;
    return g.deg() + 1;
  }
  FV root = p.s / p.t;
  std::vector<FV> a = g.c;  // a[i] = coeff of s^i in g(s,1)
  int v = 0;
  for (;;) {
    if (a.empty()) return v;
    std::vector<FV> q(a.size() > 1 ? a.size() - 1 : 0, FV::zero(g.f));
    FV carry = FV::zero(g.f);
    for (int i = (int)a.size() - 1; i >= 1; --i) {
      carry = a[i] + carry * root;
      q[i - 1] = carry;
    }
    FV value = a[0] + carry * root;
    if (!value.is_zero()) return v;
    ++v;
    a = std::move(q);
  }
}

BinForm deflate(const BinForm& g, const P1& p) {
  if (valuation(g, p) < 1) fail("NotDivisible", "deflate: point is not a root");
  if (p.t.is_zero()) {
    BinForm r(g.f, g.deg() - 1);
    for (int i = 0; i <= r.deg(); ++i) r.c[i] = g.c[i];
    return r;
  }
  FV root = p.s / p.t;
  std::vector<FV> q(g.c.size() - 1, FV::zero(g.f));
  FV carry = FV::zero(g.f);
  for (int i = (int)g.c.size() - 1; i >= 1; --i) {
    carry = g.c[i] + carry * root;
    q[i - 1] = carry;
  }
  // g = (t_p s - s_p t) * r with t_p = p.t = 1 after normalization unless the
  // caller handed us an unnormalized point; rescale to keep the identity exact
  BinForm r = BinForm::from_coeffs(g.f, std::move(q));
  return r.scaled(fv_inv(p.t));
}

RootList roots_of_binary_form(const BinForm& g) {
  if (g.is_zero()) fail("ZeroForm", "roots of the zero form");
  RootList out;
  BinForm h = g;
  auto take_root = [&](const P1& p) {
    int v = valuation(h, p);
    if (v > 0) {
      out.roots.push_back({p, v});
      for (int i = 0; i < v; ++i) h = deflate(h, p);
    }
  };
  if (g.f->finite()) {
    for (auto& x : all_elements(g.f)) take_root(P1(x, FV::one(g.f)));
    take_root(P1(FV::one(g.f), FV::zero(g.f)));
    out.remainder_degree = h.deg();
    return out;
  }
  if (g.f->kind != FieldKind::Rationals)
    fail("UnsupportedField", "roots over this field are not supported");
  take_root(P1(FV::one(g.f), FV::zero(g.f)));   // [1:0]
  take_root(P1(FV::zero(g.f), FV::one(g.f)));   // [0:1]
  if (h.deg() > 0) {
    mpz_class lcm = 1;
    for (auto& x : h.c) {
      mpz_class den = x.q.get_den();
      lcm = lcm * den / gcd(lcm, den);
    }
    std::vector<mpz_class> a;
    for (auto& x : h.c) a.push_back(x.q.get_num() * (lcm / x.q.get_den()));
    auto divisors = [](mpz_class n) {
      std::vector<mpz_class> d;
      n = abs(n);
      for (mpz_class i = 1; i * i <= n; ++i)
        if (n % i == 0) {
          d.push_back(i);
          if (i * i != n) d.push_back(n / i);
        }
      return d;
    };
    // trailing (s^0) and leading coefficients are nonzero after the [0:1] and
    // [1:0] deflations above
    auto dl = divisors(a.front()), dh = divisors(a.back());
    for (auto& pnum : dl)
      for (auto& qden : dh)
        for (int sign = -1; sign <= 1; sign += 2) {
          mpq_class cand(sign * pnum, qden);
          cand.canonicalize();
          take_root(P1(FV::of_q(g.f, cand), FV::one(g.f)));
        }
  }
  out.remainder_degree = h.deg();
  return out;
}

BinForm binform_gcd(const BinForm& a, const BinForm& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto s_mult = [](const BinForm& g) {
    for (int i = 0; i <= g.deg(); ++i)
      if (!g.c[i].is_zero()) return i;
    return g.deg() + 1;
  };
  auto t_mult = [](const BinForm& g) {
    for (int i = g.deg(); i >= 0; --i)
      if (!g.c[i].is_zero()) return g.deg() - i;
    return g.deg() + 1;
  };
  int sp = std::min(s_mult(a), s_mult(b));
  int tp = std::min(t_mult(a), t_mult(b));
  auto strip = [&](const BinForm& g) {
    int lo = s_mult(g), hi = g.deg() - t_mult(g);
    std::vector<FV> u;
    for (int i = lo; i <= hi; ++i) u.push_back(g.c[i]);
    return u;  // dehomogenized poly in x = s/t with nonzero ends
  };
  std::vector<FV> u = strip(a), v = strip(b);
  auto norm = [](std::vector<FV>& x) {
    while (!x.empty() && x.back().is_zero()) x.pop_back();
  };
  while (!v.empty()) {
    while (u.size() >= v.size()) {
      FV fdiv = u.back() / v.back();
      size_t off = u.size() - v.size();
      for (size_t i = 0; i < v.size(); ++i) u[off + i] = u[off + i] - fdiv * v[i];
      norm(u);
      if (u.empty()) break;
    }
    std::swap(u, v);
  }
  int d = u.empty() ? 0 : (int)u.size() - 1;
  BinForm g(a.f, d + sp + tp);
  if (u.empty())
    g.c[sp] = FV::one(a.f);
  else
    for (int i = 0; i <= d; ++i) g.c[i + sp] = u[i] / u.back();
  return g;
}

}  // namespace dpz

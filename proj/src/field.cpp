#include "dpz/field.hpp"

#include <sstream>

namespace dpz {

namespace {

// polynomial arithmetic on coefficient vectors mod p (c[i] = coeff of g^i)
std::vector<Int> poly_mod(std::vector<Int> a, const std::vector<Int>& m, Int p) {
  int k = (int)m.size() - 1;  // monic degree-k modulus
  while ((int)a.size() > k) {
    Int lead = a.back();
    int d = (int)a.size() - 1;
    if (lead != 0)
      for (int i = 0; i < k; ++i)
        a[d - k + i] = mod_reduce(a[d - k + i] - mul_mod(lead, m[i], p), p);
    a.pop_back();
  }
  a.resize(k, 0);
  return a;
}

std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b,
                          const std::vector<Int>& m, Int p) {
  std::vector<Int> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (size_t j = 0; j < b.size(); ++j)
        c[i + j] = mod_reduce(c[i + j] + mul_mod(a[i], b[j], p), p);
  return poly_mod(std::move(c), m, p);
}

bool poly_is_zero(const std::vector<Int>& a) {
  for (Int x : a)
    if (x) return false;
  return true;
}

std::vector<Int> poly_pow(std::vector<Int> a, mpz_class e, const std::vector<Int>& m,
                          Int p) {
  std::vector<Int> r(m.size() - 1, 0);
  r[0] = 1;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = poly_mul(r, a, m, p);
    a = poly_mul(a, a, m, p);
    e >>= 1;
  }
  return r;
}

// checks irreducibility of a monic modulus over F_p by verifying that
// x^(p^k) = x and x^(p^(k/l)) != x for every prime divisor l of k
bool modulus_irreducible(const std::vector<Int>& m, Int p) {
  int k = (int)m.size() - 1;
  mpz_class q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  std::vector<Int> x(k, 0);
  if (k == 1) return true;
  x[1] = 1;
  if (poly_pow(x, q, m, p) != x) return false;
  for (int l = 2; l <= k; ++l) {
    if (k % l || !is_prime(l)) continue;
    mpz_class ql = 1;
    for (int i = 0; i < k / l; ++i) ql *= p;
    auto y = poly_pow(x, ql, m, p);
    std::vector<Int> diff(k, 0);
    for (int i = 0; i < k; ++i) diff[i] = mod_reduce(y[i] - x[i], p);
    if (poly_is_zero(diff)) return false;
  }
  return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  out.push_back(cur);
  return out;
}

}  // namespace

FieldPtr Field::rationals() {
  auto f = std::make_shared<Field>();
  f->kind = FieldKind::Rationals;
  return f;
}

FieldPtr Field::prime(Int p) {
  if (!is_prime(p)) fail("NotPrime", std::to_string(p) + " is not prime");
  auto f = std::make_shared<Field>();
  f->kind = FieldKind::Prime;
  f->p = p;
  return f;
}

FieldPtr Field::ext(Int p, const std::vector<Int>& modulus, const std::string& gen) {
  if (!is_prime(p)) fail("NotPrime", std::to_string(p) + " is not prime");
  if (modulus.size() < 2 || modulus.back() % p != 1)
    fail("BadModulus", "modulus must be monic of degree >= 1");
  auto f = std::make_shared<Field>();
  f->kind = FieldKind::Ext;
  f->p = p;
  f->deg = (int)modulus.size() - 1;
  f->modulus = modulus;
  for (auto& c : f->modulus) c = mod_reduce(c, p);
  f->modulus.back() = 1;
  f->gen = gen;
  mpz_class q = 1;
  for (int i = 0; i < f->deg; ++i) q *= p;
  if (q <= 65536 && !modulus_irreducible(f->modulus, p))
    fail("BadModulus", "modulus is reducible over F_" + std::to_string(p));
  return f;
}

FieldPtr Field::rational_functions(const FieldPtr& base,
                                   const std::vector<std::string>& vars) {
  if (base->kind != FieldKind::Rationals && base->kind != FieldKind::Prime)
    fail("BadField", "rational-function base must be Q or a prime field");
  if (vars.empty()) fail("BadField", "rational-function field needs variables");
  auto f = std::make_shared<Field>();
  f->kind = FieldKind::RationalFunctions;
  f->base = base;
  f->vars = vars;
  return f;
}

FieldPtr Field::parse(const std::string& spec) {
  if (spec == "Q") return rationals();
  if (spec == "F2") return prime(2);
  if (spec == "F3") return prime(3);
  if (spec == "F5") return prime(5);
  if (spec == "F7") return prime(7);
  if (spec == "F4") return ext(2, {1, 1, 1}, "w");       // w^2+w+1
  if (spec == "F8") return ext(2, {1, 1, 0, 1}, "t");    // t^3+t+1
  if (spec == "F9") return ext(3, {1, 0, 1}, "u");       // u^2+1
  if (spec == "F27") return ext(3, {1, 2, 0, 1}, "v");   // v^3+2v+1
  if (spec == "F25") return ext(5, {1, 1, 1}, "v");      // v^2+v+1
  auto parts = split(spec, ':');
  if (parts[0] == "Fp" && parts.size() == 2) return prime(std::stoll(parts[1]));
  if (parts[0] == "Fq" && parts.size() == 3) {
    auto pk = split(parts[1], '^');
    if (pk.size() != 2) fail("ParseError", "expected Fq:<p>^<k>:<coeffs>");
    Int p = std::stoll(pk[0]);
    int k = std::stoi(pk[1]);
    std::vector<Int> m;
    for (auto& c : split(parts[2], ',')) m.push_back(std::stoll(c));
    if ((int)m.size() != k + 1) fail("ParseError", "modulus needs k+1 coefficients");
    return ext(p, m, "g");
  }
  if (parts[0] == "RF" && parts.size() == 3) {
    FieldPtr base = parse(parts[1]);
    return rational_functions(base, split(parts[2], ','));
  }
  fail("ParseError", "unknown field '" + spec + "'");
}

Int Field::order() const {
  if (!finite()) fail("UnsupportedField", "order of an infinite field");
  Int q = 1;
  for (int i = 0; i < deg; ++i) q *= p;
  return q;
}

std::string Field::describe() const {
  switch (kind) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::Prime:
      return "F" + std::to_string(p);
    case FieldKind::Ext:
      return "F" + std::to_string(order()) + "(" + gen + ")";
    case FieldKind::RationalFunctions: {
      std::string s = base->describe() + "(";
      for (size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
      return s + ")";
    }
  }
  return "?";
}

bool Field::same(const Field& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case FieldKind::Rationals:
      return true;
    case FieldKind::Prime:
      return p == o.p;
    case FieldKind::Ext:
      return p == o.p && modulus == o.modulus;
    case FieldKind::RationalFunctions:
      return base->same(*o.base) && vars == o.vars;
  }
  return false;
}

static void check_same(const FV& a, const FV& b) {
  if (!a.f || !b.f || !a.f->same(*b.f))
    fail("DescriptorMismatch", "operands from different fields");
}

FV FV::zero(const FieldPtr& f) { return of_int(f, 0); }
FV FV::one(const FieldPtr& f) { return of_int(f, 1); }

FV FV::of_int(const FieldPtr& f, Int n) { return of_q(f, mpq_class((long)n)); }

FV FV::of_q(const FieldPtr& f, const mpq_class& v) {
  FV x;
  x.f = f;
  switch (f->kind) {
    case FieldKind::Rationals:
      x.q = v;
      x.q.canonicalize();
      break;
    case FieldKind::Prime:
    case FieldKind::Ext: {
      mpz_class num = v.get_num() % f->p, den = v.get_den() % f->p;
      if (den == 0) fail("DivisionByZero", "denominator vanishes in F_p");
      Int r = mul_mod(mod_reduce(num.get_si(), f->p),
                      inv_mod(mod_reduce(den.get_si(), f->p), f->p), f->p);
      if (f->kind == FieldKind::Prime)
        x.r = r;
      else {
        x.e.assign(f->deg, 0);
        x.e[0] = r;
      }
      break;
    }
    case FieldKind::RationalFunctions: {
      int nv = (int)f->vars.size();
      Int chr = f->characteristic();
      x.rf = std::make_shared<MFrac>(MPoly::constant(nv, chr, v),
                                     MPoly::constant(nv, chr, 1));
      break;
    }
  }
  return x;
}

FV FV::of_residue(const FieldPtr& f, Int n) {
  if (f->kind != FieldKind::Prime) fail("DescriptorMismatch", "of_residue needs F_p");
  FV x;
  x.f = f;
  x.r = mod_reduce(n, f->p);
  return x;
}

FV FV::of_ext(const FieldPtr& f, std::vector<Int> coeffs) {
  if (f->kind != FieldKind::Ext) fail("DescriptorMismatch", "of_ext needs an extension");
  FV x;
  x.f = f;
  coeffs.resize(f->deg, 0);
  for (auto& c : coeffs) c = mod_reduce(c, f->p);
  x.e = std::move(coeffs);
  return x;
}

FV FV::of_frac(const FieldPtr& f, const MFrac& fr) {
  FV x;
  x.f = f;
  x.rf = std::make_shared<MFrac>(fr);
  return x;
}

FV FV::parse(const FieldPtr& f, const std::string& text) {
  switch (f->kind) {
    case FieldKind::Rationals:
      return of_q(f, q_parse(text));
    case FieldKind::Prime: {
      MPoly m = parse_mpoly(text, {}, f->p);
      return of_q(f, m.is_zero() ? mpq_class(0) : m.leading_coeff());
    }
    case FieldKind::Ext: {
      MPoly m = parse_mpoly(text, {f->gen}, f->p);
      std::vector<Int> c(f->deg + std::max(0, m.degree_in(0)) + 1, 0);
      for (auto& [e, co] : m.terms) c[e[0]] = mod_reduce(co.get_num().get_si(), f->p);
      // reduce modulo the modulus
      std::vector<Int> red = poly_mod(std::move(c), f->modulus, f->p);
      return of_ext(f, red);
    }
    case FieldKind::RationalFunctions: {
      auto pos = text.find('/');
      Int chr = f->characteristic();
      if (pos != std::string::npos && text.find('(') == std::string::npos) {
        MPoly n = parse_mpoly(text.substr(0, pos), f->vars, chr);
        MPoly d = parse_mpoly(text.substr(pos + 1), f->vars, chr);
        return of_frac(f, MFrac(n, d));
      }
      MPoly n = parse_mpoly(text, f->vars, chr);
      return of_frac(f, MFrac(n, MPoly::constant((int)f->vars.size(), chr, 1)));
    }
  }
  fail("ParseError", "bad field value");
}

bool FV::is_zero() const {
  switch (f->kind) {
    case FieldKind::Rationals:
      return q == 0;
    case FieldKind::Prime:
      return r == 0;
    case FieldKind::Ext:
      return poly_is_zero(e);
    case FieldKind::RationalFunctions:
      return rf->is_zero();
  }
  return true;
}

bool FV::operator==(const FV& o) const {
  check_same(*this, o);
  switch (f->kind) {
    case FieldKind::Rationals:
      return q == o.q;
    case FieldKind::Prime:
      return r == o.r;
    case FieldKind::Ext:
      return e == o.e;
    case FieldKind::RationalFunctions:
      return *rf == *o.rf;
  }
  return false;
}

std::string FV::str() const {
  switch (f->kind) {
    case FieldKind::Rationals:
      return q_str(q);
    case FieldKind::Prime:
      return std::to_string(r);
    case FieldKind::Ext: {
      MPoly m(1, f->p);
      for (int i = 0; i < f->deg; ++i)
        if (e[i]) m.add_term({i}, e[i]);
      return m.str({f->gen});
    }
    case FieldKind::RationalFunctions: {
      std::string n = rf->num.str(f->vars);
      if (rf->den.total_degree() == 0 && rf->den.leading_coeff() == 1) return n;
      return "(" + n + ")/(" + rf->den.str(f->vars) + ")";
    }
  }
  return "?";
}

FV operator+(const FV& a, const FV& b) {
  check_same(a, b);
  FV x;
  x.f = a.f;
  switch (a.f->kind) {
    case FieldKind::Rationals:
      x.q = a.q + b.q;
      x.q.canonicalize();
      break;
    case FieldKind::Prime:
      x.r = mod_reduce(a.r + b.r, a.f->p);
      break;
    case FieldKind::Ext:
      x.e.resize(a.f->deg);
      for (int i = 0; i < a.f->deg; ++i) x.e[i] = mod_reduce(a.e[i] + b.e[i], a.f->p);
      break;
    case FieldKind::RationalFunctions:
      x.rf = std::make_shared<MFrac>(*a.rf + *b.rf);
      break;
  }
  return x;
}

FV operator-(const FV& a) {
  FV x;
  x.f = a.f;
  switch (a.f->kind) {
    case FieldKind::Rationals:
      x.q = -a.q;
      break;
    case FieldKind::Prime:
      x.r = mod_reduce(-a.r, a.f->p);
      break;
    case FieldKind::Ext:
      x.e.resize(a.f->deg);
      for (int i = 0; i < a.f->deg; ++i) x.e[i] = mod_reduce(-a.e[i], a.f->p);
      break;
    case FieldKind::RationalFunctions:
      x.rf = std::make_shared<MFrac>(MFrac(-a.rf->num, a.rf->den));
      break;
  }
  return x;
}

FV operator-(const FV& a, const FV& b) { return a + (-b); }

FV operator*(const FV& a, const FV& b) {
  check_same(a, b);
  FV x;
  x.f = a.f;
  switch (a.f->kind) {
    case FieldKind::Rationals:
      x.q = a.q * b.q;
      x.q.canonicalize();
      break;
    case FieldKind::Prime:
      x.r = mul_mod(a.r, b.r, a.f->p);
      break;
    case FieldKind::Ext:
      x.e = poly_mul(a.e, b.e, a.f->modulus, a.f->p);
      break;
    case FieldKind::RationalFunctions:
      x.rf = std::make_shared<MFrac>(*a.rf * *b.rf);
      break;
  }
  return x;
}

FV fv_inv(const FV& a) {
  if (a.is_zero()) fail("DivisionByZero", "inverse of zero");
  FV x;
  x.f = a.f;
  switch (a.f->kind) {
    case FieldKind::Rationals:
      x.q = 1 / a.q;
      break;
    case FieldKind::Prime:
      x.r = inv_mod(a.r, a.f->p);
      break;
    case FieldKind::Ext: {
      // a^(q-2) in F_q
      mpz_class e = 1;
      for (int i = 0; i < a.f->deg; ++i) e *= a.f->p;
      e -= 2;
      x.e = poly_pow(a.e, e, a.f->modulus, a.f->p);
      break;
    }
    case FieldKind::RationalFunctions:
      x.rf = std::make_shared<MFrac>(MFrac(a.rf->den, a.rf->num));
      break;
  }
  return x;
}

FV operator/(const FV& a, const FV& b) { return a * fv_inv(b); }

FV fv_pow(const FV& a, long long e) {
  if (e < 0) return fv_pow(fv_inv(a), -e);
  FV r = FV::one(a.f), b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FV frobenius_root(const FV& x, int r) {
  if (!x.f->finite())
    fail("UnsupportedField", "frobenius roots need a finite field");
  if (r < 1) fail("BadArgument", "root order must be >= 1");
  int k = x.f->deg;
  int steps = ((k - (r % k)) % k + k) % k;
  FV y = x;
  for (int i = 0; i < steps; ++i) y = fv_pow(y, x.f->p);
  return y;
}

std::vector<FV> all_elements(const FieldPtr& f) {
  if (!f->finite()) fail("UnsupportedField", "cannot enumerate an infinite field");
  std::vector<FV> out;
  if (f->kind == FieldKind::Prime) {
    for (Int i = 0; i < f->p; ++i) out.push_back(FV::of_residue(f, i));
    return out;
  }
  std::vector<Int> c(f->deg, 0);
  for (;;) {
    out.push_back(FV::of_ext(f, c));
    int i = 0;
    while (i < f->deg) {
      if (++c[i] < f->p) break;
      c[i] = 0;
      ++i;
    }
    if (i == f->deg) break;
  }
  return out;
}

FV random_element(const FieldPtr& f, Rng& rng) {
  switch (f->kind) {
    case FieldKind::Rationals: {
      Int num = rng.uniform(-20, 20), den = rng.uniform(1, 12);
      return FV::of_q(f, mpq_class((long)num, (long)den));
    }
    case FieldKind::Prime:
      return FV::of_residue(f, rng.uniform(0, f->p - 1));
    case FieldKind::Ext: {
      std::vector<Int> c(f->deg);
      for (auto& x : c) x = rng.uniform(0, f->p - 1);
      return FV::of_ext(f, c);
    }
    case FieldKind::RationalFunctions: {
      int nv = (int)f->vars.size();
      Int chr = f->characteristic();
      MPoly n(nv, chr), d(nv, chr);
      for (int t = 0; t < 3; ++t) {
        std::vector<int> e(nv);
        for (auto& x : e) x = (int)rng.uniform(0, 2);
        n.add_term(e, (long)rng.uniform(-4, 4));
      }
      d = MPoly::constant(nv, chr, 1);
      std::vector<int> e(nv);
      if (nv > 0) e[0] = 1;
      d.add_term(e, (long)rng.uniform(0, 2));
      if (n.is_zero()) n = MPoly::constant(nv, chr, 1);
      return FV::of_frac(f, MFrac(n, d));
    }
  }
  fail("BadField", "random_element");
}

}  // namespace dpz

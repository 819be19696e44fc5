#pragma once
// Sparse multivariate polynomials over Q or F_p, used as the carrier of
// rational-function-field values. Terms are kept in graded-lex order with no
// zero coefficients; coefficients of an F_p polynomial are reduced to [0,p).

#include "dpz/numkit.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace dpz {

struct MPoly {
  int nvars = 0;
  Int chr = 0;  // 0 for Q, otherwise the prime p
  // exponent vector -> coefficient; comparator gives graded-lex, largest first
  struct ExpLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
      int da = 0, db = 0;
      for (int x : a) da += x;
      for (int x : b) db += x;
      if (da != db) return da > db;
      return a > b;
    }
  };
  std::map<std::vector<int>, mpq_class, ExpLess> terms;

  MPoly() = default;
  MPoly(int nv, Int p) : nvars(nv), chr(p) {}

  static MPoly constant(int nv, Int p, const mpq_class& c) {
    MPoly r(nv, p);
    r.add_term(std::vector<int>(nv, 0), c);
    return r;
  }
  static MPoly variable(int nv, Int p, int i) {
    MPoly r(nv, p);
    std::vector<int> e(nv, 0);
    e[i] = 1;
    r.add_term(e, 1);
    return r;
  }

  mpq_class reduce_coeff(const mpq_class& c) const {
    if (chr == 0) {
      mpq_class r(c);
      r.canonicalize();
      return r;
    }
    // numerator/denominator mod p; denominator must be invertible
    mpz_class num = c.get_num() % chr, den = c.get_den() % chr;
    if (den == 0) fail("DivisionByZero", "denominator vanishes mod p");
    Int n = mod_reduce(num.get_si(), chr);
    Int d = mod_reduce(den.get_si(), chr);
    return mpq_class(mul_mod(n, inv_mod(d, chr), chr));
  }

  void add_term(const std::vector<int>& e, const mpq_class& c) {
    mpq_class v = reduce_coeff(c);
    auto it = terms.find(e);
    if (it == terms.end()) {
      if (v != 0) terms.emplace(e, v);
    } else {
      it->second = reduce_coeff(it->second + v);
      if (it->second == 0) terms.erase(it);
    }
  }

  bool is_zero() const { return terms.empty(); }
  int total_degree() const {
    if (terms.empty()) return -1;
    int d = 0;
    for (int x : terms.begin()->first) d += x;
    return d;
  }
  mpq_class leading_coeff() const {
    return terms.empty() ? mpq_class(0) : terms.begin()->second;
  }

  MPoly operator+(const MPoly& o) const {
    MPoly r(*this);
    for (auto& [e, c] : o.terms) r.add_term(e, c);
    return r;
  }
  MPoly operator-(const MPoly& o) const {
    MPoly r(*this);
    for (auto& [e, c] : o.terms) r.add_term(e, -c);
    return r;
  }
  MPoly operator-() const {
    MPoly r(nvars, chr);
    for (auto& [e, c] : terms) r.add_term(e, -c);
    return r;
  }
  MPoly operator*(const MPoly& o) const {
    MPoly r(nvars, chr);
    for (auto& [e1, c1] : terms)
      for (auto& [e2, c2] : o.terms) {
        std::vector<int> e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
        r.add_term(e, c1 * c2);
      }
    return r;
  }
  MPoly scaled(const mpq_class& c) const {
    MPoly r(nvars, chr);
    for (auto& [e, cc] : terms) r.add_term(e, cc * c);
    return r;
  }
  bool operator==(const MPoly& o) const { return terms == o.terms; }

  int degree_in(int v) const {
    int d = -1;
    for (auto& [e, c] : terms) d = std::max(d, e[v]);
    return d;
  }

  std::string str(const std::vector<std::string>& names) const;
};

// gcd of multivariate polynomials; full reduction implemented for <= 2
// variables (univariate Euclid / primitive PRS), monomial content otherwise.
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);
// exact division; fails if not divisible
MPoly mpoly_divexact(const MPoly& a, const MPoly& b);
bool mpoly_try_divide(const MPoly& a, const MPoly& b, MPoly& quot);

// Reduced fraction of multivariate polynomials. Canonical form: gcd removed
// (for <= 2 variables), denominator with leading coefficient 1.
struct MFrac {
  MPoly num, den;
  MFrac() = default;
  MFrac(MPoly n, MPoly d) : num(std::move(n)), den(std::move(d)) { canon(); }
  void canon();
  bool is_zero() const { return num.is_zero(); }
  MFrac operator+(const MFrac& o) const {
    return MFrac(num * o.den + o.num * den, den * o.den);
  }
  MFrac operator-(const MFrac& o) const {
    return MFrac(num * o.den - o.num * den, den * o.den);
  }
  MFrac operator*(const MFrac& o) const { return MFrac(num * o.num, den * o.den); }
  MFrac operator/(const MFrac& o) const {
    if (o.num.is_zero()) fail("DivisionByZero", "division by zero rational function");
    return MFrac(num * o.den, den * o.num);
  }
  bool operator==(const MFrac& o) const {
    // cross-multiplication keeps equality decidable even without full gcd
    return (num * o.den) == (o.num * den);
  }
};

MPoly parse_mpoly(const std::string& text, const std::vector<std::string>& vars,
                  Int chr);

}  // namespace dpz

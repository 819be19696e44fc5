#pragma once
// Homogeneous binary forms in (s,t) over an exact field, with the valuation
// and Hasse-derivative tools the plane-geometry layer is built on.

#include "dpz/field.hpp"

namespace dpz {

// A point of P^1, normalized so the first nonzero coordinate is 1.
struct P1 {
  FV s, t;
  P1() = default;
  P1(FV a, FV b);
  bool operator==(const P1& o) const { return s == o.s && t == o.t; }
  std::string str() const { return "[" + s.str() + ":" + t.str() + "]"; }
};

struct BinForm {
  FieldPtr f;
  std::vector<FV> c;  // c[i] multiplies s^i t^(deg-i); size = deg+1

  BinForm() = default;
  BinForm(FieldPtr fld, int deg);
  static BinForm from_coeffs(FieldPtr fld, std::vector<FV> coeffs);
  // parse "s^2*t - 3*t^3" style text
  static BinForm parse(const FieldPtr& fld, const std::string& text,
                       const std::string& sv = "s", const std::string& tv = "t");

  int deg() const { return (int)c.size() - 1; }
  bool is_zero() const;
  FV eval(const FV& s, const FV& t) const;
  FV eval(const P1& p) const { return eval(p.s, p.t); }

  BinForm operator+(const BinForm& o) const;
  BinForm operator-(const BinForm& o) const;
  BinForm operator*(const BinForm& o) const;
  BinForm scaled(const FV& k) const;

  // k-th Hasse derivative with respect to s (or t): s^a -> C(a,k) s^(a-k)
  BinForm hasse_s(int k) const;
  BinForm hasse_t(int k) const;

  std::string str(const std::string& sv = "s", const std::string& tv = "t") const;
};

// order of vanishing of g at a point of P^1 (deg+1 if g = 0)
int valuation(const BinForm& g, const P1& p);

// divide g exactly by the linear form vanishing at p (t_p*s - s_p*t)
BinForm deflate(const BinForm& g, const P1& p);

struct RootList {
  std::vector<std::pair<P1, int>> roots;  // point, multiplicity
  int remainder_degree = 0;               // degree of the rootless cofactor
};

// Complete rational-root factorization: over a finite field by scanning
// P^1(F_q); over Q by the rational root theorem plus the point at infinity.
RootList roots_of_binary_form(const BinForm& g);

// gcd of two binary forms (Euclid on dehomogenizations, exact)
BinForm binform_gcd(const BinForm& a, const BinForm& b);

}  // namespace dpz

#pragma once
// Homogeneous polynomials in (x,y,z) over an exact field, plus projective
// points and linear changes of coordinates.

#include "dpz/binform.hpp"

#include <array>
#include <map>

namespace dpz {

// Point of P^2, normalized so the first nonzero coordinate is 1.
struct PPoint {
  std::array<FV, 3> x;
  PPoint() = default;
  PPoint(FV a, FV b, FV c);
  static PPoint parse(const FieldPtr& f, const std::string& text);  // "[a:b:c]"
  bool operator==(const PPoint& o) const {
    return x[0] == o.x[0] && x[1] == o.x[1] && x[2] == o.x[2];
  }
  std::string str() const {
    return "[" + x[0].str() + ":" + x[1].str() + ":" + x[2].str() + "]";
  }
  FieldPtr field() const { return x[0].f; }
};

struct TriPoly {
  FieldPtr f;
  // exponent triple (i,j,k), i+j+k = deg -> coefficient
  std::map<std::array<int, 3>, FV> terms;

  TriPoly() = default;
  explicit TriPoly(FieldPtr fld) : f(std::move(fld)) {}
  static TriPoly parse(const FieldPtr& f, const std::string& text);

  void add_term(const std::array<int, 3>& e, const FV& c);
  bool is_zero() const { return terms.empty(); }
  int degree() const;
  bool homogeneous() const;

  TriPoly operator+(const TriPoly& o) const;
  TriPoly operator-(const TriPoly& o) const;
  TriPoly operator*(const TriPoly& o) const;
  TriPoly scaled(const FV& k) const;
  bool proportional(const TriPoly& o) const;

  FV eval(const PPoint& p) const;
  FV eval(const FV& a, const FV& b, const FV& c) const;
  // substitute binary forms for (x,y,z): the pullback along a parametrization
  BinForm pullback(const std::array<BinForm, 3>& param) const;

  std::string str() const;
};

// 3x3 matrix over the field acting on column vectors of P^2.
struct Mat3 {
  std::array<std::array<FV, 3>, 3> a;
  static Mat3 identity(const FieldPtr& f);
  static Mat3 from_columns(const PPoint& c0, const PPoint& c1, const PPoint& c2);
  PPoint apply(const PPoint& p) const;
  std::array<BinForm, 3> apply(const std::array<BinForm, 3>& forms) const;
  Mat3 mul(const Mat3& o) const;
  Mat3 inverse() const;
  FV det() const;
  std::string str() const;
};

// F composed with the substitution (x,y,z) -> M*(x,y,z)
TriPoly substitute(const TriPoly& F, const Mat3& M);

// multiplicity of F at a point (0 = off the curve, 1 = smooth point, ...)
int multiplicity_at(const TriPoly& F, const PPoint& p);

// Solve a homogeneous linear system (rows over the field); returns a basis of
// the solution space.
std::vector<std::vector<FV>> kernel_basis(std::vector<std::vector<FV>> rows,
                                          int ncols, const FieldPtr& f);

}  // namespace dpz

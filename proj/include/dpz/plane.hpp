#pragma once
// Exact projective-plane geometry: parametrized curves of degree <= 3, local
// intersection multiplicities, tangents, inflections, cubic normal forms,
// group laws, strange-curve detection and ramification profiles.

#include "dpz/tripoly.hpp"

#include <optional>
#include <variant>

namespace dpz {

struct PlaneCurve {
  int degree = 1;
  TriPoly implicit;
  std::optional<std::array<BinForm, 3>> param;

  static PlaneCurve line(const FV& a, const FV& b, const FV& c);
  static PlaneCurve line_through(const PPoint& p, const PPoint& q);
  static PlaneCurve from_implicit(const TriPoly& F);
  static PlaneCurve from_param(const std::array<BinForm, 3>& nu);  // derives F
  void attach_param(const std::array<BinForm, 3>& nu);  // checks F(nu) = 0

  PPoint at(const P1& t) const;  // evaluate the parametrization
  FieldPtr field() const { return implicit.f; }
};

// vanishing order at t0 of the pullback of c2 along c1's parametrization
int local_mult(const PlaneCurve& c1, const PlaneCurve& c2, const P1& t0);

// params of c mapping to p (gcd of the point-condition forms); the root
// multiplicity equals the branch multiplicity
std::vector<std::pair<P1, int>> point_params(const PlaneCurve& c, const PPoint& p);

// branch multiplicity at a parameter (min valuation over lines through the point)
int branch_multiplicity(const PlaneCurve& c, const P1& t0);

// the unique line with local_mult >= m+1 at t0 (m = branch multiplicity),
// found by linear algebra; SingularParameter if not unique
PlaneCurve tangent_line(const PlaneCurve& c, const P1& t0);

struct InflectionResult {
  bool every_smooth_point = false;  // char-3 totally-inflectional case
  std::vector<P1> params;           // rational inflection parameters
};
InflectionResult inflections(const PlaneCurve& cubic);

enum class CubicTag { NodalStd, CuspidalStd, StrangeChar3 };
std::string cubic_tag_str(CubicTag t);

struct CubicClass {
  CubicTag tag;
  PPoint singular_point;
  std::vector<P1> singular_params;      // of the attached parametrization
  std::optional<Mat3> to_normal;        // F_input proportional to F_normal o M
  bool requires_extension = false;      // normal form needs a field extension
  std::array<BinForm, 3> parametrization;
  InflectionResult inflection_data;
};

// The three normal forms.
PlaneCurve nodal_std(const FieldPtr& f);     // x^3+y^3 = xyz
PlaneCurve cuspidal_std(const FieldPtr& f);  // y^3 = x^2 z
PlaneCurve strange_std(const FieldPtr& f);   // x^2 y + y^2 z + z^2 x (char 3)
TriPoly normal_form_implicit(const FieldPtr& f, CubicTag tag);

// Classification with constructive normalization. If the input has no
// parametrization, the singular point is located by a plane scan (finite
// fields) or taken from `singular_hint`.
CubicClass classify_cubic(const PlaneCurve& cubic,
                          std::optional<PPoint> singular_hint = std::nullopt);

// Common point of all tangent lines, when it exists.
std::optional<PPoint> strange_point(const PlaneCurve& c);

// Chord-tangent group law on a singular cubic with an inflection origin.
struct CubicGroup {
  PlaneCurve curve;
  P1 origin;                   // inflection parameter
  std::vector<P1> singular_params;
  CubicGroup(const PlaneCurve& c, const P1& origin);
  PPoint add(const PPoint& p, const PPoint& q) const;
  PPoint neg(const PPoint& p) const;
  PPoint origin_point() const { return curve.at(origin); }
  // third intersection of the line through p,q (tangent when p = q)
  PPoint chord_third(const PPoint& p, const PPoint& q) const;
  P1 param_of(const PPoint& p) const;  // unique smooth parameter
};

// For the strange char-3 cubic: the tangency cycle p1 -> p2 -> p3 -> p1.
std::array<PPoint, 3> strange_tangent_cycle(const PlaneCurve& c, const P1& p1);

struct RamificationProfile {
  bool inseparable = false;
  bool hurwitz_total_ramification = false;  // sum(e_i - 1) >= 2*char - 1
  std::vector<std::pair<P1, int>> points;   // source point, ramification index
  long long sum_e_minus_1 = 0;
};
RamificationProfile ramification_profile(const BinForm& f0, const BinForm& f1);

}  // namespace dpz

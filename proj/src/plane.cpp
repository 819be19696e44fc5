#include "dpz/plane.hpp"

#include <algorithm>

namespace dpz {

namespace {

// substitute (s,t) = (a*u + b*w, c*u + d*w) into a binary form
BinForm compose_linear(const BinForm& g, const FV& a, const FV& b, const FV& c,
                       const FV& d) {
  FieldPtr f = g.f;
  BinForm Ls(f, 1), Lt(f, 1);
  Ls.c[1] = a;  // coeff of u
  Ls.c[0] = b;  // coeff of w
  Lt.c[1] = c;
  Lt.c[0] = d;
  BinForm acc(f, g.deg());
  for (int i = 0; i <= g.deg(); ++i) {
    if (g.c[i].is_zero()) continue;
    BinForm term(f, 0);
    term.c[0] = g.c[i];
    for (int k = 0; k < i; ++k) term = term * Ls;
    for (int k = 0; k < g.deg() - i; ++k) term = term * Lt;
    acc = acc + term;
  }
  return acc;
}

// local chart at t0: returns (a,b,c,d) with (s,t) = (a*u + b*w, c*u + d*w),
// t0 corresponding to [u:w] = [0:1], so valuation = lowest power of u
std::array<FV, 4> local_chart(const FieldPtr& f, const P1& t0) {
  if (!t0.t.is_zero()) return {FV::one(f), t0.s, FV::zero(f), t0.t};
  return {FV::zero(f), t0.s, FV::one(f), t0.t};
}

// coefficient of u^k w^(deg-k) after the local substitution
FV local_coeff(const BinForm& g, const std::array<FV, 4>& ch, int k) {
  BinForm h = compose_linear(g, ch[0], ch[1], ch[2], ch[3]);
  return h.c[k];
}

std::vector<P1> all_p1_points(const FieldPtr& f) {
  std::vector<P1> pts;
  for (auto& x : all_elements(f)) pts.emplace_back(x, FV::one(f));
  pts.emplace_back(FV::one(f), FV::zero(f));
  return pts;
}

}  // namespace

PlaneCurve PlaneCurve::line(const FV& a, const FV& b, const FV& c) {
  PlaneCurve l;
  l.degree = 1;
  l.implicit = TriPoly(a.f);
  l.implicit.add_term({1, 0, 0}, a);
  l.implicit.add_term({0, 1, 0}, b);
  l.implicit.add_term({0, 0, 1}, c);
  if (l.implicit.is_zero()) fail("ZeroForm", "zero line");
  // parametrize by two points of the line
  FieldPtr f = a.f;
  std::vector<PPoint> pts;
  if (!c.is_zero()) {
    pts.emplace_back(FV::one(f), FV::zero(f), -a / c);
    pts.emplace_back(FV::zero(f), FV::one(f), -b / c);
  } else if (!b.is_zero()) {
    pts.emplace_back(FV::one(f), -a / b, FV::zero(f));
    pts.emplace_back(FV::zero(f), FV::zero(f), FV::one(f));
  } else {
    pts.emplace_back(FV::zero(f), FV::one(f), FV::zero(f));
    pts.emplace_back(FV::zero(f), FV::zero(f), FV::one(f));
  }
  std::array<BinForm, 3> nu;
  for (int i = 0; i < 3; ++i) {
    nu[i] = BinForm(f, 1);
    nu[i].c[1] = pts[0].x[i];
    nu[i].c[0] = pts[1].x[i];
  }
  l.param = nu;
  return l;
}

PlaneCurve PlaneCurve::line_through(const PPoint& p, const PPoint& q) {
  FV a = p.x[1] * q.x[2] - p.x[2] * q.x[1];
  FV b = p.x[2] * q.x[0] - p.x[0] * q.x[2];
  FV c = p.x[0] * q.x[1] - p.x[1] * q.x[0];
  if (a.is_zero() && b.is_zero() && c.is_zero())
    fail("BadPoint", "line through equal points");
  return line(a, b, c);
}

PlaneCurve PlaneCurve::from_implicit(const TriPoly& F) {
  if (F.is_zero() || !F.homogeneous())
    fail("ZeroForm", "implicit form must be homogeneous and nonzero");
  PlaneCurve c;
  c.degree = F.degree();
  c.implicit = F;
  return c;
}

PlaneCurve PlaneCurve::from_param(const std::array<BinForm, 3>& nu) {
  FieldPtr f = nu[0].f;
  int d = nu[0].deg();
  // unknown implicit form of degree d: solve F(nu) = 0 coefficient-wise
  std::vector<std::array<int, 3>> monos;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) monos.push_back({i, j, d - i - j});
  int ncols = (int)monos.size();
  std::vector<std::vector<FV>> rows(d * d + 1, std::vector<FV>(ncols, FV::zero(f)));
  for (int m = 0; m < ncols; ++m) {
    TriPoly mono(f);
    mono.add_term(monos[m], FV::one(f));
    BinForm pb = mono.pullback(nu);
    for (int k = 0; k <= d * d; ++k) rows[k][m] = pb.c[k];
  }
  auto ker = kernel_basis(rows, ncols, f);
  if (ker.size() != 1)
    fail("BadParam", "parametrization is not birational onto a degree-" +
                         std::to_string(d) + " curve");
  TriPoly F(f);
  for (int m = 0; m < ncols; ++m) F.add_term(monos[m], ker[0][m]);
  PlaneCurve c;
  c.degree = d;
  c.implicit = F;
  c.param = nu;
  return c;
}

void PlaneCurve::attach_param(const std::array<BinForm, 3>& nu) {
  BinForm pb = implicit.pullback(nu);
  if (!pb.is_zero()) fail("BadParam", "parametrization does not lie on the curve");
  param = nu;
}

PPoint PlaneCurve::at(const P1& t) const {
  if (!param) fail("NoParam", "curve has no parametrization");
  auto& nu = *param;
  return PPoint(nu[0].eval(t), nu[1].eval(t), nu[2].eval(t));
}

int local_mult(const PlaneCurve& c1, const PlaneCurve& c2, const P1& t0) {
  if (!c1.param) fail("NoParam", "local_mult needs a parametrized first curve");
  BinForm pb = c2.implicit.pullback(*c1.param);
  if (pb.is_zero()) fail("CurveContained", "pullback vanishes identically");
  return valuation(pb, t0);
}

std::vector<std::pair<P1, int>> point_params(const PlaneCurve& c, const PPoint& p) {
  if (!c.param) fail("NoParam", "point_params needs a parametrization");
  auto& nu = *c.param;
  static const int pair_idx[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<BinForm> conds;
  for (auto& pr : pair_idx) {
    BinForm cond = nu[pr[0]].scaled(p.x[pr[1]]) - nu[pr[1]].scaled(p.x[pr[0]]);
    if (!cond.is_zero()) conds.push_back(cond);
  }
  if (conds.empty()) fail("BadParam", "constant parametrization");
  BinForm gg = conds[0];
  for (size_t i = 1; i < conds.size(); ++i) gg = binform_gcd(gg, conds[i]);
  if (gg.deg() == 0) return {};
  auto roots = roots_of_binary_form(gg);
  std::vector<std::pair<P1, int>> out;
  for (auto& [pt, m] : roots.roots) out.push_back({pt, m});
  return out;
}

int branch_multiplicity(const PlaneCurve& c, const P1& t0) {
  PPoint p = c.at(t0);
  FieldPtr f = c.field();
  // two independent lines through p (cross products with the unit vectors)
  std::vector<PlaneCurve> lines;
  for (int i = 0; i < 3 && lines.size() < 2; ++i) {
    std::array<FV, 3> e = {FV::zero(f), FV::zero(f), FV::zero(f)};
    e[i] = FV::one(f);
    FV a = p.x[1] * e[2] - p.x[2] * e[1];
    FV b = p.x[2] * e[0] - p.x[0] * e[2];
    FV cc = p.x[0] * e[1] - p.x[1] * e[0];
    if (a.is_zero() && b.is_zero() && cc.is_zero()) continue;
    PlaneCurve cand = PlaneCurve::line(a, b, cc);
    bool dup = false;
    for (auto& l : lines)
      if (l.implicit.proportional(cand.implicit)) dup = true;
    if (!dup) lines.push_back(std::move(cand));
  }
  int m = 1 << 20;
  for (auto& l : lines) m = std::min(m, local_mult(c, l, t0));
  return m;
}

PlaneCurve tangent_line(const PlaneCurve& c, const P1& t0) {
  if (!c.param) fail("NoParam", "tangent_line needs a parametrization");
  FieldPtr f = c.field();
  int m = branch_multiplicity(c, t0);
  auto ch = local_chart(f, t0);
  // conditions: coefficient of u^k vanishes for k = 0..m in a*f0+b*f1+c*f2
  std::vector<std::vector<FV>> rows;
  std::array<BinForm, 3> comp;
  for (int i = 0; i < 3; ++i)
    comp[i] = compose_linear((*c.param)[i], ch[0], ch[1], ch[2], ch[3]);
  for (int k = 0; k <= m; ++k)
    rows.push_back({comp[0].c[k], comp[1].c[k], comp[2].c[k]});
  auto ker = kernel_basis(rows, 3, f);
  if (ker.size() != 1)
    fail("SingularParameter", "tangent not unique at " + t0.str());
  return PlaneCurve::line(ker[0][0], ker[0][1], ker[0][2]);
}

namespace {

// Hasse-Wronskian of the parametrization w.r.t. s (order-3 contact locus)
BinForm hasse_wronskian(const std::array<BinForm, 3>& nu) {
  FieldPtr f = nu[0].f;
  std::array<std::array<BinForm, 3>, 3> m;
  for (int j = 0; j < 3; ++j) {
    m[0][j] = nu[j];
    m[1][j] = nu[j].hasse_s(1);
    m[2][j] = nu[j].hasse_s(2);
  }
  auto mul3 = [](const BinForm& a, const BinForm& b, const BinForm& c) {
    return a * b * c;
  };
  BinForm det = mul3(m[0][0], m[1][1], m[2][2]) + mul3(m[0][1], m[1][2], m[2][0]) +
                mul3(m[0][2], m[1][0], m[2][1]) - mul3(m[0][2], m[1][1], m[2][0]) -
                mul3(m[0][0], m[1][2], m[2][1]) - mul3(m[0][1], m[1][0], m[2][2]);
  return det;
}

// does some line meet with multiplicity >= 3 at t0?
bool has_order3_line(const PlaneCurve& c, const P1& t0) {
  FieldPtr f = c.field();
  auto ch = local_chart(f, t0);
  std::vector<std::vector<FV>> rows;
  std::array<BinForm, 3> comp;
  for (int i = 0; i < 3; ++i)
    comp[i] = compose_linear((*c.param)[i], ch[0], ch[1], ch[2], ch[3]);
  for (int k = 0; k <= 2; ++k)
    rows.push_back({comp[0].c[k], comp[1].c[k], comp[2].c[k]});
  return !kernel_basis(rows, 3, f).empty();
}

}  // namespace

InflectionResult inflections(const PlaneCurve& cubic) {
  if (!cubic.param) fail("NoParam", "inflections need a parametrization");
  if (cubic.degree != 3) fail("BadArgument", "inflections of a non-cubic");
  FieldPtr f = cubic.field();
  InflectionResult out;
  auto smooth = [&](const P1& t) {
    return multiplicity_at(cubic.implicit, cubic.at(t)) == 1;
  };
  BinForm w = hasse_wronskian(*cubic.param);
  if (w.is_zero()) {
    out.every_smooth_point = true;
    if (f->finite() && f->order() <= 4096) {
      for (auto& t : all_p1_points(f))
        if (smooth(t) && has_order3_line(cubic, t)) out.params.push_back(t);
    }
    return out;
  }
  std::vector<P1> candidates;
  if (f->finite() && f->order() <= 4096) {
    candidates = all_p1_points(f);
  } else {
    auto roots = roots_of_binary_form(w);
    for (auto& [pt, m] : roots.roots) candidates.push_back(pt);
    candidates.emplace_back(FV::one(f), FV::zero(f));
    candidates.emplace_back(FV::zero(f), FV::one(f));
  }
  for (auto& t : candidates) {
    bool dup = false;
    for (auto& u : out.params)
      if (u == t) dup = true;
    if (dup) continue;
    if (smooth(t) && has_order3_line(cubic, t)) out.params.push_back(t);
  }
  return out;
}

std::string cubic_tag_str(CubicTag t) {
  switch (t) {
    case CubicTag::NodalStd:
      return "NodalStd";
    case CubicTag::CuspidalStd:
      return "CuspidalStd";
    case CubicTag::StrangeChar3:
      return "StrangeChar3";
  }
  return "?";
}

TriPoly normal_form_implicit(const FieldPtr& f, CubicTag tag) {
  switch (tag) {
    case CubicTag::NodalStd:
      return TriPoly::parse(f, "x^3+y^3-x*y*z");
    case CubicTag::CuspidalStd:
      return TriPoly::parse(f, "y^3-x^2*z");
    case CubicTag::StrangeChar3:
      return TriPoly::parse(f, "x^2*y+y^2*z+z^2*x");
  }
  fail("BadArgument", "normal_form_implicit");
}

PlaneCurve nodal_std(const FieldPtr& f) {
  PlaneCurve c = PlaneCurve::from_implicit(normal_form_implicit(f, CubicTag::NodalStd));
  c.attach_param({BinForm::parse(f, "s^2*t"), BinForm::parse(f, "s*t^2"),
                  BinForm::parse(f, "s^3+t^3")});
  return c;
}

PlaneCurve cuspidal_std(const FieldPtr& f) {
  PlaneCurve c =
      PlaneCurve::from_implicit(normal_form_implicit(f, CubicTag::CuspidalStd));
  c.attach_param({BinForm::parse(f, "s^3"), BinForm::parse(f, "s^2*t"),
                  BinForm::parse(f, "t^3")});
  return c;
}

PlaneCurve strange_std(const FieldPtr& f) {
  if (f->characteristic() != 3)
    fail("BadField", "the strange cubic lives in characteristic 3");
  PlaneCurve c =
      PlaneCurve::from_implicit(normal_form_implicit(f, CubicTag::StrangeChar3));
  c.attach_param({BinForm::parse(f, "s^2*t"), BinForm::parse(f, "s*(s+t)^2"),
                  BinForm::parse(f, "-(s+t)*t^2")});
  return c;
}

namespace {

std::optional<FV> fv_cuberoot(const FV& a) {
  FieldPtr f = a.f;
  if (a.is_zero()) return FV::zero(f);
  if (f->finite()) {
    Int q = f->order();
    if (q <= 4096) {
      for (auto& x : all_elements(f))
        if (fv_pow(x, 3) == a) return x;
      return std::nullopt;
    }
    if ((q - 1) % 3 != 0) {
      // cubing is a bijection; invert the exponent
      Int inv3 = inv_mod(3 % (q - 1), q - 1);
      return fv_pow(a, inv3);
    }
    return std::nullopt;
  }
  if (f->kind == FieldKind::Rationals) {
    auto zroot = [](const mpz_class& n) -> std::optional<mpz_class> {
      mpz_class r;
      mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3);
      if (r * r * r == n) return r;
      if (n < 0) {
        mpz_class m = -n;
        mpz_root(r.get_mpz_t(), m.get_mpz_t(), 3);
        if (r * r * r == m) return -r;
      }
      return std::nullopt;
    };
    auto rn = zroot(a.q.get_num()), rd = zroot(a.q.get_den());
    if (rn && rd) return FV::of_q(f, mpq_class(*rn, *rd));
    return std::nullopt;
  }
  return std::nullopt;
}

// move p to the image of [0:0:1] by an invertible matrix
Mat3 move_to_origin(const PPoint& p) {
  FieldPtr f = p.field();
  int pivot = -1;
  for (int i = 0; i < 3; ++i)
    if (!p.x[i].is_zero()) pivot = i;
  std::vector<PPoint> cols;
  for (int i = 0; i < 3; ++i) {
    if (i == pivot) continue;
    std::array<FV, 3> u = {FV::zero(f), FV::zero(f), FV::zero(f)};
    u[i] = FV::one(f);
    cols.emplace_back(u[0], u[1], u[2]);
  }
  return Mat3::from_columns(cols[0], cols[1], p);
}

// split F with a multiplicity-2 point at [0:0:1] into z*A2(x,y) + A3(x,y)
void split_cone(const TriPoly& F, BinForm& A2, BinForm& A3) {
  FieldPtr f = F.f;
  A2 = BinForm(f, 2);
  A3 = BinForm(f, 3);
  for (auto& [e, c] : F.terms) {
    if (e[2] == 1)
      A2.c[e[0]] = A2.c[e[0]] + c;
    else if (e[2] == 0)
      A3.c[e[0]] = A3.c[e[0]] + c;
    else if (!c.is_zero())
      fail("BadArgument", "multiplicity at the moved point exceeds 2");
  }
}

// Mobius transform sending three distinct points to three distinct points;
// returns the 2x2 matrix acting on (s,t)
std::array<FV, 4> mobius_three_points(const std::array<P1, 3>& from,
                                      const std::array<P1, 3>& to) {
  FieldPtr f = from[0].s.f;
  // standard: find M with M(from_i) ~ to_i. Solve by sending from -> (0,1,inf)
  auto to_std = [&](const std::array<P1, 3>& p) {
    // matrix sending p0->[0:1], p1->[1:1], p2->[1:0]
    // rows of M: [a b; c d] with M(s,t) = (a s + b t, c s + d t)
    // M(p0) ~ [0:1]: a s0 + b t0 = 0 -> (a,b) ~ (t0, -s0)
    // M(p2) ~ [1:0]: c s2 + d t2 = 0 -> (c,d) ~ (t2, -s2)
    FV a = p[0].t, b = -p[0].s, c = p[2].t, d = -p[2].s;
    // scale so that M(p1) ~ [1:1]
    FV u = a * p[1].s + b * p[1].t;
    FV v = c * p[1].s + d * p[1].t;
    if (u.is_zero() || v.is_zero()) fail("BadPoint", "mobius points not distinct");
    // multiply (c,d) by u/v
    FV k = u / v;
    return std::array<FV, 4>{a, b, c * k, d * k};
  };
  auto m1 = to_std(from), m2 = to_std(to);
  // M = m2^{-1} * m1
  FV det = m2[0] * m2[3] - m2[1] * m2[2];
  std::array<FV, 4> inv = {m2[3] / det, -m2[1] / det, -m2[2] / det, m2[0] / det};
  return {inv[0] * m1[0] + inv[1] * m1[2], inv[0] * m1[1] + inv[1] * m1[3],
          inv[2] * m1[0] + inv[3] * m1[2], inv[2] * m1[1] + inv[3] * m1[3]};
}

std::array<BinForm, 3> reparam(const std::array<BinForm, 3>& nu,
                               const std::array<FV, 4>& mob) {
  std::array<BinForm, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = compose_linear(nu[i], mob[0], mob[2], mob[1], mob[3]);
  return out;
}

}  // namespace

CubicClass classify_cubic(const PlaneCurve& input, std::optional<PPoint> hint) {
  FieldPtr f = input.field();
  if (input.degree != 3) fail("BadArgument", "classify_cubic needs a cubic");
  TriPoly F = input.implicit;

  // locate the singular point
  std::optional<PPoint> sing = hint;
  if (!sing && input.param) {
    if (f->finite() && f->order() <= 4096) {
      for (auto& t : all_p1_points(f)) {
        PPoint p = input.at(t);
        if (multiplicity_at(F, p) >= 2) {
          sing = p;
          break;
        }
      }
    } else {
      // non-immersion locus from the parametrization: common zeros of the
      // 2x2 minors of [nu; d nu] (catches cusps over infinite fields)
      auto& nu = *input.param;
      auto minors = [&](bool use_t) {
        std::array<BinForm, 3> d;
        for (int i = 0; i < 3; ++i)
          d[i] = use_t ? nu[i].hasse_t(1) : nu[i].hasse_s(1);
        BinForm g;
        bool first = true;
        static const int pr[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (auto& ij : pr) {
          BinForm m = nu[ij[0]] * d[ij[1]] - nu[ij[1]] * d[ij[0]];
          if (m.is_zero()) continue;
          g = first ? m : binform_gcd(g, m);
          first = false;
        }
        return g;
      };
      BinForm g = minors(false);
      if (!g.is_zero() && g.deg() > 0) {
        for (auto& [t, v] : roots_of_binary_form(g).roots) {
          PPoint p = input.at(t);
          if (multiplicity_at(F, p) >= 2) {
            sing = p;
            break;
          }
        }
      }
      if (!sing) {
        // check the chart at infinity too
        P1 inf(FV::one(f), FV::zero(f));
        PPoint p = input.at(inf);
        if (multiplicity_at(F, p) >= 2) sing = p;
      }
    }
  }
  if (!sing && f->finite() && f->order() <= 4096) {
    auto elems = all_elements(f);
    auto consider = [&](const PPoint& p) {
      if (!sing && multiplicity_at(F, p) >= 2) sing = p;
    };
    for (auto& a : elems)
      for (auto& b : elems) consider(PPoint(FV::one(f), a, b));
    for (auto& b : elems) consider(PPoint(FV::zero(f), FV::one(f), b));
    consider(PPoint(FV::zero(f), FV::zero(f), FV::one(f)));
  }
  if (!sing)
    fail("SmoothCubic",
         "no singular point found (supply a hint for infinite fields)");
  if (multiplicity_at(F, *sing) < 2) fail("SmoothCubic", "hint is a smooth point");
  if (multiplicity_at(F, *sing) > 2) fail("ReducibleCubic", "triple point");

  Mat3 n1 = move_to_origin(*sing);
  TriPoly G = substitute(F, n1);
  BinForm A2, A3;
  split_cone(G, A2, A3);
  if (binform_gcd(A2, A3).deg() > 0)
    fail("ReducibleCubic", "tangent cone divides the cubic part");

  // standard parametrization through the singular point:
  // [s*A2 : t*A2 : -A3] in moved coordinates
  std::array<BinForm, 3> mu;
  {
    BinForm s1(f, 1), t1(f, 1);
    s1.c[1] = FV::one(f);
    t1.c[0] = FV::one(f);
    mu[0] = s1 * A2;
    mu[1] = t1 * A2;
    mu[2] = A3.scaled(-FV::one(f));
  }
  std::array<BinForm, 3> nu = n1.apply(mu);

  CubicClass out;
  out.singular_point = *sing;
  out.parametrization = nu;

  auto a2roots = roots_of_binary_form(A2);
  bool node = false, split_node = false;
  P1 cusp_param;
  std::array<P1, 2> node_params;
  if (a2roots.roots.size() == 1 && a2roots.roots[0].second == 2) {
    cusp_param = a2roots.roots[0].first;
  } else if (a2roots.roots.size() == 2) {
    node = split_node = true;
    node_params = {a2roots.roots[0].first, a2roots.roots[1].first};
  } else if (a2roots.roots.empty() && a2roots.remainder_degree == 2) {
    node = true;  // conjugate branches
  } else {
    fail("ReducibleCubic", "degenerate tangent cone");
  }
  if (node) {
    out.tag = CubicTag::NodalStd;
    if (split_node)
      out.singular_params = {node_params[0], node_params[1]};
    else {
      out.requires_extension = true;
      return out;
    }
  } else {
    out.singular_params = {cusp_param};
  }

  Mat3 product = n1;  // running composition N1*...*Nk (as substitutions)
  TriPoly H = G;

  if (node) {
    // tangent factors -> {x=0},{y=0}: B with l1(Bv) = x, l2(Bv) = y
    // l_i = t_i x - s_i y from root [s_i : t_i]
    Mat3 n2 = Mat3::identity(f);
    {
      FV l1x = node_params[0].t, l1y = -node_params[0].s;
      FV l2x = node_params[1].t, l2y = -node_params[1].s;
      FV det = l1x * l2y - l1y * l2x;
      // B = [[l1x l1y],[l2x l2y]]^{-1}
      n2.a[0][0] = l2y / det;
      n2.a[0][1] = -l1y / det;
      n2.a[1][0] = -l2x / det;
      n2.a[1][1] = l1x / det;
    }
    H = substitute(H, n2);
    product = product.mul(n2);
    // H = e*xyz + a x^3 + b x^2 y + c x y^2 + d y^3
    auto coeff = [&](int i, int j, int k) {
      auto it = H.terms.find({i, j, k});
      return it == H.terms.end() ? FV::zero(f) : it->second;
    };
    FV e = coeff(1, 1, 1);
    if (e.is_zero()) fail("ReducibleCubic", "nodal cubic without xyz-term");
    Mat3 n3 = Mat3::identity(f);
    n3.a[2][0] = -coeff(2, 1, 0) / e;
    n3.a[2][1] = -coeff(1, 2, 0) / e;
    H = substitute(H, n3);
    product = product.mul(n3);
    FV a = coeff(3, 0, 0), d = coeff(0, 3, 0);
    e = coeff(1, 1, 1);
    if (a.is_zero() || d.is_zero()) fail("ReducibleCubic", "nodal normalization");
    auto rho = fv_cuberoot(d / a);
    if (!rho) {
      out.requires_extension = true;
      return out;
    }
    Mat3 n4 = Mat3::identity(f);
    n4.a[0][0] = *rho;              // x -> rho x: a rho^3 = d on both cubes
    n4.a[2][2] = -d / (e * *rho);   // xyz coefficient becomes -d
    H = substitute(H, n4);
    product = product.mul(n4);
  } else {
    // cusp tangent -> {x=0}
    Mat3 n2 = Mat3::identity(f);
    {
      FV lx = cusp_param.t, ly = -cusp_param.s;
      // need B with l(Bv) = x; complete with an independent row
      FV m0, m1;
      if (!lx.is_zero()) {
        m0 = FV::zero(f);
        m1 = FV::one(f);
      } else {
        m0 = FV::one(f);
        m1 = FV::zero(f);
      }
      FV det = lx * m1 - ly * m0;
      n2.a[0][0] = m1 / det;
      n2.a[0][1] = -ly / det;
      n2.a[1][0] = -m0 / det;
      n2.a[1][1] = lx / det;
    }
    H = substitute(H, n2);
    product = product.mul(n2);
    auto coeff = [&](int i, int j, int k) {
      auto it = H.terms.find({i, j, k});
      return it == H.terms.end() ? FV::zero(f) : it->second;
    };
    FV u = coeff(2, 0, 1);
    if (u.is_zero()) fail("ReducibleCubic", "cuspidal normalization");
    Mat3 n3 = Mat3::identity(f);
    n3.a[2][0] = -coeff(3, 0, 0) / u;
    n3.a[2][1] = -coeff(2, 1, 0) / u;
    H = substitute(H, n3);
    product = product.mul(n3);
    FV a0 = coeff(0, 3, 0), b = coeff(1, 2, 0);
    if (a0.is_zero()) fail("ReducibleCubic", "cuspidal cubic without y^3");
    if (!b.is_zero() && f->characteristic() == 3) {
      out.tag = CubicTag::StrangeChar3;
      // frame-based normalization, via the derived parametrization
      PlaneCurve cur;
      cur.degree = 3;
      cur.implicit = F;
      cur.param = nu;
      P1 cusp_nu;  // cusp parameter of nu = image of cusp_param under n1-chain?
      {
        auto pp = point_params(cur, *sing);
        if (pp.size() != 1) fail("ReducibleCubic", "cusp parameter not unique");
        cusp_nu = pp[0].first;
      }
      FieldPtr ff = f;
      PlaneCurve std_curve = strange_std(ff);
      // marked frame on the standard curve: a = [1:0], tangent residual, cusp [1:1]
      P1 std_a(FV::one(ff), FV::zero(ff));
      P1 std_cusp(FV::one(ff), FV::one(ff));
      auto residual = [&](const PlaneCurve& c, const P1& ta) {
        PlaneCurve tl = tangent_line(c, ta);
        BinForm pb = tl.implicit.pullback(*c.param);
        BinForm g = deflate(deflate(pb, ta), ta);
        auto roots = roots_of_binary_form(g);
        if (roots.roots.empty()) fail("SplittingFieldTooSmall", "tangent residual");
        return roots.roots[0].first;
      };
      P1 std_b = residual(std_curve, std_a);
      bool done = false;
      for (auto& ta : all_p1_points(ff)) {
        if (done) break;
        if (ta == cusp_nu) continue;
        P1 tb;
        try {
          tb = residual(cur, ta);
        } catch (const Error&) {
          continue;
        }
        if (tb == ta || tb == cusp_nu) continue;
        auto mob = mobius_three_points({ta, tb, cusp_nu}, {std_a, std_b, std_cusp});
        // now solve M * (nu o mob^{-1}) = std parametrization... equivalently
        // M * nu' = nu_std with nu' = nu o mob_inv; build mob_inv
        FV det = mob[0] * mob[3] - mob[1] * mob[2];
        std::array<FV, 4> mobinv = {mob[3] / det, -mob[1] / det, -mob[2] / det,
                                    mob[0] / det};
        auto nup = reparam(nu, mobinv);
        auto& nstd = *std_curve.param;
        // unknowns: M (9) and scale c: M*nup - c*nstd = 0
        std::vector<std::vector<FV>> rows;
        for (int i = 0; i < 3; ++i)
          for (int k = 0; k <= 3; ++k) {
            std::vector<FV> row(10, FV::zero(ff));
            for (int j = 0; j < 3; ++j) row[3 * i + j] = nup[j].c[k];
            row[9] = -nstd[i].c[k];
            rows.push_back(row);
          }
        auto ker = kernel_basis(rows, 10, ff);
        for (auto& v : ker) {
          Mat3 M;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M.a[i][j] = v[3 * i + j];
          if (M.det().is_zero()) continue;
          // verify: F proportional to F_std o M
          TriPoly check = substitute(normal_form_implicit(ff, CubicTag::StrangeChar3), M);
          if (check.proportional(F)) {
            out.to_normal = M;
            done = true;
            break;
          }
        }
      }
      if (!done) out.requires_extension = true;
      out.inflection_data = inflections(cur);
      return out;
    }
    if (!b.is_zero()) {
      // char != 3: absorb x y^2 via y -> y - (b/3a) x, then clean z again
      Mat3 n4 = Mat3::identity(f);
      n4.a[1][0] = -b / (FV::of_int(f, 3) * a0);
      H = substitute(H, n4);
      product = product.mul(n4);
      Mat3 n5 = Mat3::identity(f);
      u = coeff(2, 0, 1);
      n5.a[2][0] = -coeff(3, 0, 0) / u;
      n5.a[2][1] = -coeff(2, 1, 0) / u;
      H = substitute(H, n5);
      product = product.mul(n5);
      a0 = coeff(0, 3, 0);
    }
    out.tag = CubicTag::CuspidalStd;
    u = coeff(2, 0, 1);
    Mat3 n6 = Mat3::identity(f);
    n6.a[2][2] = -a0 / u;  // u x^2 z + a0 y^3 -> a0 (y^3 - x^2 z)
    H = substitute(H, n6);
    product = product.mul(n6);
  }

  // F o product = H proportional to the normal form; expose A = product^{-1}
  TriPoly target = normal_form_implicit(f, out.tag);
  if (!H.proportional(target)) fail("InternalError", "normalization mismatch");
  out.to_normal = product.inverse();
  {
    PlaneCurve cur;
    cur.degree = 3;
    cur.implicit = F;
    cur.param = nu;
    out.inflection_data = inflections(cur);
  }
  return out;
}

std::optional<PPoint> strange_point(const PlaneCurve& c) {
  if (!c.param) fail("NoParam", "strange_point needs a parametrization");
  FieldPtr f = c.field();
  auto& nu = *c.param;
  auto cross = [&](const std::array<BinForm, 3>& u, const std::array<BinForm, 3>& v) {
    std::array<BinForm, 3> w;
    w[0] = u[1] * v[2] - u[2] * v[1];
    w[1] = u[2] * v[0] - u[0] * v[2];
    w[2] = u[0] * v[1] - u[1] * v[0];
    return w;
  };
  std::array<BinForm, 3> d1 = {nu[0].hasse_s(1), nu[1].hasse_s(1), nu[2].hasse_s(1)};
  auto tangent = cross(nu, d1);
  bool zero = tangent[0].is_zero() && tangent[1].is_zero() && tangent[2].is_zero();
  if (zero) {
    std::array<BinForm, 3> d1t = {nu[0].hasse_t(1), nu[1].hasse_t(1),
                                  nu[2].hasse_t(1)};
    tangent = cross(nu, d1t);
    zero = tangent[0].is_zero() && tangent[1].is_zero() && tangent[2].is_zero();
    if (zero) fail("BadParam", "degenerate parametrization");
  }
  int deg = tangent[0].deg();
  std::vector<std::vector<FV>> rows;
  for (int k = 0; k <= deg; ++k)
    rows.push_back({tangent[0].c[k], tangent[1].c[k], tangent[2].c[k]});
  auto ker = kernel_basis(rows, 3, f);
  if (ker.size() != 1) return std::nullopt;
  return PPoint(ker[0][0], ker[0][1], ker[0][2]);
}

CubicGroup::CubicGroup(const PlaneCurve& c, const P1& o) : curve(c), origin(o) {
  if (!curve.param) fail("NoParam", "group law needs a parametrization");
  if (curve.degree != 3) fail("BadArgument", "group law on a non-cubic");
  // origin must be an inflection: some line meets with multiplicity 3 there
  PPoint op = curve.at(o);
  if (multiplicity_at(curve.implicit, op) != 1)
    fail("OriginNotInflection", "origin is a singular point");
  if (!has_order3_line(curve, o))
    fail("OriginNotInflection", "tangent at origin has contact < 3");
}

P1 CubicGroup::param_of(const PPoint& p) const {
  if (multiplicity_at(curve.implicit, p) != 1)
    fail("SingularPointInput", p.str() + " is singular");
  auto pp = point_params(curve, p);
  if (pp.size() != 1) fail("SingularPointInput", "parameter not unique");
  return pp[0].first;
}

PPoint CubicGroup::chord_third(const PPoint& p, const PPoint& q) const {
  FieldPtr f = curve.field();
  if (!(p == q)) {
    std::array<BinForm, 3> line;
    for (int i = 0; i < 3; ++i) {
      line[i] = BinForm(f, 1);
      line[i].c[1] = p.x[i];
      line[i].c[0] = q.x[i];
    }
    BinForm g = curve.implicit.pullback(line);
    if (g.is_zero()) fail("BadArgument", "chord lies on the cubic");
    P1 tp(FV::one(f), FV::zero(f)), tq(FV::zero(f), FV::one(f));
    g = deflate(g, tp);
    g = deflate(g, tq);
    // remaining linear form: root [u:v] with g = v0*u - ... pick its zero
    P1 root = g.c[1].is_zero() ? P1(FV::one(f), FV::zero(f))
                               : P1(-g.c[0], g.c[1]);
    return PPoint(line[0].eval(root), line[1].eval(root), line[2].eval(root));
  }
  // tangent case
  P1 tpar = param_of(p);
  PlaneCurve tl = tangent_line(curve, tpar);
  // second point on the tangent line distinct from p
  PPoint other = tl.at(P1(FV::one(f), FV::zero(f)));
  if (other == p) other = tl.at(P1(FV::zero(f), FV::one(f)));
  if (other == p) other = tl.at(P1(FV::one(f), FV::one(f)));
  std::array<BinForm, 3> line;
  for (int i = 0; i < 3; ++i) {
    line[i] = BinForm(f, 1);
    line[i].c[1] = p.x[i];
    line[i].c[0] = other.x[i];
  }
  BinForm g = curve.implicit.pullback(line);
  P1 tp(FV::one(f), FV::zero(f));
  g = deflate(g, tp);
  g = deflate(g, tp);
  P1 root = g.c[1].is_zero() ? P1(FV::one(f), FV::zero(f)) : P1(-g.c[0], g.c[1]);
  return PPoint(line[0].eval(root), line[1].eval(root), line[2].eval(root));
}

PPoint CubicGroup::add(const PPoint& p, const PPoint& q) const {
  if (multiplicity_at(curve.implicit, p) != 1 ||
      multiplicity_at(curve.implicit, q) != 1)
    fail("SingularPointInput", "group law input is singular");
  PPoint r = chord_third(p, q);
  return chord_third(r, origin_point());
}

PPoint CubicGroup::neg(const PPoint& p) const { return chord_third(p, origin_point()); }

std::array<PPoint, 3> strange_tangent_cycle(const PlaneCurve& c, const P1& p1) {
  FieldPtr f = c.field();
  auto next = [&](const P1& t) {
    PlaneCurve tl = tangent_line(c, t);
    BinForm pb = tl.implicit.pullback(*c.param);
    if (valuation(pb, t) != 2) fail("BadArgument", "tangent contact is not 2");
    BinForm g = deflate(deflate(pb, t), t);
    auto roots = roots_of_binary_form(g);
    if (roots.roots.empty()) fail("SplittingFieldTooSmall", "tangent residual");
    return roots.roots[0].first;
  };
  P1 p2 = next(p1);
  P1 p3 = next(p2);
  P1 p4 = next(p3);
  if (!(p4 == p1)) fail("BadArgument", "tangent cycle does not close");
  return {c.at(p1), c.at(p2), c.at(p3)};
}

RamificationProfile ramification_profile(const BinForm& f0, const BinForm& f1) {
  FieldPtr f = f0.f;
  if (!f->finite()) fail("UnsupportedField", "ramification needs a finite field");
  if (f0.deg() != f1.deg()) fail("DegreeMismatch", "map components");
  if (f0.deg() > 8) fail("BadArgument", "map degree bounded at 8");
  if (binform_gcd(f0, f1).deg() != 0) fail("BadMap", "components share a factor");
  RamificationProfile out;
  Int p = f->characteristic();
  BinForm w = f0.hasse_s(1) * f1 - f0 * f1.hasse_s(1);
  if (w.is_zero()) {
    out.inseparable = true;
    return out;
  }
  if (f->order() > 65536) fail("UnsupportedField", "field too large to scan");
  auto rl = roots_of_binary_form(w);
  bool infinity_ramified = false;
  for (auto& t : all_p1_points(f)) {
    FV a = f0.eval(t), b = f1.eval(t);
    // e = valuation of (b*f0 - a*f1) at t
    BinForm g = f0.scaled(b) - f1.scaled(a);
    int e = valuation(g, t);
    if (e >= 2) {
      out.points.push_back({t, e});
      out.sum_e_minus_1 += e - 1;
      if (t.t.is_zero()) infinity_ramified = true;
    }
  }
  // all geometric ramification must be rational: zeros of the derivative form
  // must split, apart from the point at infinity handled directly
  if (rl.remainder_degree > 0)
    fail("SplittingFieldTooSmall", "nonrational critical points remain");
  (void)infinity_ramified;
  out.hurwitz_total_ramification = (out.sum_e_minus_1 >= 2 * p - 1);
  return out;
}

}  // namespace dpz

#include "doctest.h"
#include "dpz/plane.hpp"

using namespace dpz;

namespace {

P1 pt(const FieldPtr& f, Int s, Int t) {
  return P1(FV::of_int(f, s), FV::of_int(f, t));
}

}  // namespace

TEST_CASE("roots of binary forms") {
  auto f2 = Field::parse("F2");
  BinForm g = BinForm::parse(f2, "s^2*t + s*t^2");
  auto r = roots_of_binary_form(g);
  CHECK(r.roots.size() == 3);
  CHECK(r.remainder_degree == 0);

  auto q = Field::rationals();
  BinForm h = BinForm::parse(q, "(s-t)^3");
  auto rq = roots_of_binary_form(h);
  REQUIRE(rq.roots.size() == 1);
  CHECK(rq.roots[0].second == 3);

  auto f3 = Field::parse("F3");
  BinForm k = BinForm::parse(f3, "s^2+t^2");
  auto r3 = roots_of_binary_form(k);
  CHECK(r3.roots.empty());
  CHECK(r3.remainder_degree == 2);
}

TEST_CASE("local multiplicities on the normal forms") {
  auto q = Field::rationals();
  PlaneCurve nod = nodal_std(q);
  PlaneCurve tang = PlaneCurve::line(FV::of_int(q, 3), FV::of_int(q, 3), FV::one(q));
  CHECK(local_mult(nod, tang, pt(q, 1, -1)) == 3);
  PlaneCurve line = PlaneCurve::line_through(nod.at(pt(q, 1, 1)), nod.at(pt(q, 2, 1)));
  CHECK(local_mult(nod, line, pt(q, 1, 1)) == 1);

  PlaneCurve cus = cuspidal_std(q);
  PlaneCurve x0 = PlaneCurve::line(FV::one(q), FV::zero(q), FV::zero(q));
  CHECK(local_mult(cus, x0, pt(q, 0, 1)) == 3);
}

TEST_CASE("tangent lines, including the characteristic-p caveats") {
  auto f2 = Field::parse("F2");
  PlaneCurve cus2 = cuspidal_std(f2);
  PlaneCurve t1 = tangent_line(cus2, pt(f2, 1, 1));
  TriPoly expect = TriPoly::parse(f2, "z + y");
  CHECK(t1.implicit.proportional(expect));

  auto f3 = Field::parse("F3");
  PlaneCurve cus3 = cuspidal_std(f3);
  PlaneCurve t3 = tangent_line(cus3, pt(f3, 1, 1));
  CHECK(t3.implicit.proportional(TriPoly::parse(f3, "z - x")));

  auto q = Field::rationals();
  PlaneCurve nod = nodal_std(q);
  PlaneCurve tn = tangent_line(nod, pt(q, 1, -1));
  CHECK(tn.implicit.proportional(TriPoly::parse(q, "3*x+3*y+z")));
  PlaneCurve b0 = tangent_line(nod, pt(q, 0, 1));
  CHECK(b0.implicit.proportional(TriPoly::parse(q, "x")));
  PlaneCurve b1 = tangent_line(nod, pt(q, 1, 0));
  CHECK(b1.implicit.proportional(TriPoly::parse(q, "y")));
}

TEST_CASE("inflections of the normal forms") {
  auto f7 = Field::parse("F7");
  auto infl = inflections(nodal_std(f7));
  CHECK(!infl.every_smooth_point);
  CHECK(infl.params.size() == 3);
  for (auto& t : infl.params) {
    FV z = -(t.s / t.t);
    CHECK(fv_pow(z, 3) == FV::one(f7));
  }

  auto f3 = Field::parse("F3");
  CHECK(inflections(nodal_std(f3)).params.size() == 1);

  auto q = Field::rationals();
  auto iq = inflections(nodal_std(q));
  CHECK(iq.params.size() == 1);

  CHECK(inflections(cuspidal_std(q)).params.size() == 1);
  auto i2 = inflections(cuspidal_std(Field::parse("F2")));
  CHECK(i2.params.size() == 1);
  CHECK(i2.params[0] == pt(Field::parse("F2"), 1, 0));

  auto i3 = inflections(cuspidal_std(f3));
  CHECK(i3.every_smooth_point);

  auto s3 = inflections(strange_std(f3));
  CHECK(!s3.every_smooth_point);
  CHECK(s3.params.empty());
}

TEST_CASE("strange points") {
  auto f2 = Field::parse("F2");
  auto p = strange_point(cuspidal_std(f2));
  REQUIRE(p.has_value());
  CHECK(*p == PPoint(FV::one(f2), FV::zero(f2), FV::zero(f2)));

  auto f3 = Field::parse("F3");
  auto p3 = strange_point(cuspidal_std(f3));
  REQUIRE(p3.has_value());
  CHECK(*p3 == PPoint(FV::zero(f3), FV::one(f3), FV::zero(f3)));

  PlaneCurve conic = PlaneCurve::from_param(
      {BinForm::parse(f2, "s^2"), BinForm::parse(f2, "s*t"), BinForm::parse(f2, "t^2")});
  auto pc = strange_point(conic);
  REQUIRE(pc.has_value());
  CHECK(*pc == PPoint(FV::zero(f2), FV::one(f2), FV::zero(f2)));

  CHECK(!strange_point(cuspidal_std(Field::rationals())).has_value());
}

TEST_CASE("classification: normal forms and coordinate changes") {
  auto q = Field::rationals();
  auto c1 = classify_cubic(cuspidal_std(q));
  CHECK(c1.tag == CubicTag::CuspidalStd);
  REQUIRE(c1.to_normal.has_value());
  TriPoly back = substitute(normal_form_implicit(q, CubicTag::CuspidalStd), *c1.to_normal);
  CHECK(back.proportional(cuspidal_std(q).implicit));

  auto f7 = Field::parse("F7");
  auto c2 = classify_cubic(nodal_std(f7));
  CHECK(c2.tag == CubicTag::NodalStd);
  REQUIRE(c2.to_normal.has_value());
  TriPoly back2 = substitute(normal_form_implicit(f7, CubicTag::NodalStd), *c2.to_normal);
  CHECK(back2.proportional(nodal_std(f7).implicit));

  Mat3 m = Mat3::identity(q);
  m.a[0][1] = FV::of_int(q, 2);
  m.a[1][2] = FV::of_int(q, -1);
  m.a[2][0] = FV::of_int(q, 3);
  TriPoly scr = substitute(nodal_std(q).implicit, m);
  PPoint node = m.inverse().apply(PPoint(FV::zero(q), FV::zero(q), FV::one(q)));
  auto c3 = classify_cubic(PlaneCurve::from_implicit(scr), node);
  CHECK(c3.tag == CubicTag::NodalStd);
  REQUIRE(c3.to_normal.has_value());
  TriPoly back3 = substitute(normal_form_implicit(q, CubicTag::NodalStd), *c3.to_normal);
  CHECK(back3.proportional(scr));
}

TEST_CASE("classification: strange char-3 cubic from the proof") {
  auto f3 = Field::parse("F3");
  PlaneCurve c = PlaneCurve::from_param({BinForm::parse(f3, "s^3"),
                                         BinForm::parse(f3, "s^2*t"),
                                         BinForm::parse(f3, "t^2*(t-s)")});
  auto cl = classify_cubic(c);
  CHECK(cl.tag == CubicTag::StrangeChar3);
  REQUIRE(cl.to_normal.has_value());
  TriPoly back = substitute(normal_form_implicit(f3, CubicTag::StrangeChar3), *cl.to_normal);
  CHECK(back.proportional(c.implicit));

  auto cl2 = classify_cubic(strange_std(f3));
  CHECK(cl2.tag == CubicTag::StrangeChar3);
  CHECK(cl2.to_normal.has_value());
}

TEST_CASE("classification: the char-3 eight-point family cubics are cuspidal") {
  auto f9 = Field::parse("F9");
  FV a = FV::of_ext(f9, {0, 1}), b = FV::one(f9);
  TriPoly F = TriPoly::parse(f9, "x^3-x*z^2").scaled(a) -
              TriPoly::parse(f9, "y^3-y*z^2").scaled(b);
  auto cl = classify_cubic(PlaneCurve::from_implicit(F));
  CHECK(cl.tag == CubicTag::CuspidalStd);
  PPoint cusp(frobenius_root(b, 1), frobenius_root(a, 1), FV::zero(f9));
  CHECK(cl.singular_point == cusp);
}

TEST_CASE("group law on the nodal cubic over F7") {
  auto f7 = Field::parse("F7");
  PlaneCurve nod = nodal_std(f7);
  CubicGroup g(nod, pt(f7, 1, -1));
  for (Int s = 1; s <= 6; ++s) {
    PPoint p = nod.at(pt(f7, s, 1));
    CHECK(g.add(p, g.origin_point()) == p);
  }
  auto mu = [&](const PPoint& p) {
    P1 t = g.param_of(p);
    return -(t.s / t.t);
  };
  std::vector<PPoint> pts;
  for (Int s = 1; s <= 6; ++s) pts.push_back(nod.at(pt(f7, s, 1)));
  for (auto& x : pts)
    for (auto& y : pts) CHECK(mu(g.add(x, y)) == mu(x) * mu(y));
}

TEST_CASE("group law on the cuspidal cubic over F5") {
  auto f5 = Field::parse("F5");
  PlaneCurve cus = cuspidal_std(f5);
  CubicGroup g(cus, pt(f5, 1, 0));
  auto nu = [&](Int a) { return cus.at(pt(f5, 1, a)); };
  CHECK(g.add(nu(1), nu(2)) == nu(3));
  for (Int a = 0; a <= 4; ++a)
    for (Int b = 0; b <= 4; ++b)
      CHECK(g.add(nu(a), nu(b)) == nu((a + b) % 5));
}

TEST_CASE("group law rejects bad inputs") {
  auto q = Field::rationals();
  PlaneCurve nod = nodal_std(q);
  CHECK_THROWS_AS(CubicGroup(nod, pt(q, 1, 1)), Error);
  CubicGroup g(nod, pt(q, 1, -1));
  PPoint node(FV::zero(q), FV::zero(q), FV::one(q));
  CHECK_THROWS_AS((void)g.add(node, nod.at(pt(q, 1, 1))), Error);
}

TEST_CASE("associativity on random triples") {
  for (auto spec : {"F5", "F7", "F4", "F8", "F9"}) {
    auto f = Field::parse(spec);
    PlaneCurve nod = nodal_std(f);
    CubicGroup gn(nod, pt(f, 1, -1));
    auto elems = all_elements(f);
    std::vector<PPoint> pts;
    for (auto& x : elems)
      if (!x.is_zero()) pts.push_back(nod.at(P1(x, FV::one(f))));
    Rng rng(42);
    for (int i = 0; i < 200 && pts.size() >= 2; ++i) {
      auto& a = pts[rng.uniform(0, (Int)pts.size() - 1)];
      auto& b = pts[rng.uniform(0, (Int)pts.size() - 1)];
      auto& c = pts[rng.uniform(0, (Int)pts.size() - 1)];
      CHECK(gn.add(gn.add(a, b), c) == gn.add(a, gn.add(b, c)));
    }
  }
}

TEST_CASE("collinearity iff the sum vanishes") {
  auto f7 = Field::parse("F7");
  PlaneCurve nod = nodal_std(f7);
  CubicGroup g(nod, pt(f7, 1, -1));
  std::vector<PPoint> pts;
  for (Int s = 1; s <= 6; ++s) pts.push_back(nod.at(pt(f7, s, 1)));
  for (auto& a : pts)
    for (auto& b : pts) {
      if (a == b) continue;
      PPoint c = g.chord_third(a, b);
      CHECK(g.add(g.add(a, b), c) == g.origin_point());
    }
}

TEST_CASE("local_mult sums to 3 for a line against a cubic") {
  auto f7 = Field::parse("F7");
  PlaneCurve nod = nodal_std(f7);
  PlaneCurve line = PlaneCurve::line_through(nod.at(pt(f7, 2, 1)), nod.at(pt(f7, 3, 1)));
  BinForm pb = line.implicit.pullback(*nod.param);
  auto roots = roots_of_binary_form(pb);
  Int total = 0;
  for (auto& [t, v] : roots.roots) total += v;
  CHECK(total == 3);
  CHECK(roots.remainder_degree == 0);
}

TEST_CASE("strange tangent cycle in char 3") {
  auto f3 = Field::parse("F3");
  PlaneCurve s = strange_std(f3);
  auto cycle = strange_tangent_cycle(s, pt(f3, 1, 0));
  CHECK(!(cycle[0] == cycle[1]));
  CHECK(!(cycle[1] == cycle[2]));
  // the coordinate rotation [x:y:z] -> [y:z:x] steps along the cycle
  PPoint rot1(cycle[0].x[1], cycle[0].x[2], cycle[0].x[0]);
  CHECK(rot1 == cycle[1]);
  PPoint rot2(cycle[1].x[1], cycle[1].x[2], cycle[1].x[0]);
  CHECK(rot2 == cycle[2]);
}

TEST_CASE("ramification profiles") {
  auto f5 = Field::parse("F5");
  BinForm f0 = BinForm::parse(f5, "s^2"), f1 = BinForm::parse(f5, "t^2");
  auto r = ramification_profile(f0, f1);
  CHECK(!r.inseparable);
  CHECK(r.points.size() == 2);
  CHECK(r.sum_e_minus_1 == 2);
  CHECK(!r.hurwitz_total_ramification);

  auto f4 = Field::parse("F4");
  auto r2 = ramification_profile(BinForm::parse(f4, "s^2"), BinForm::parse(f4, "t^2"));
  CHECK(r2.inseparable);

  auto f7 = Field::parse("F7");
  auto r3 = ramification_profile(BinForm::parse(f7, "s^3"), BinForm::parse(f7, "t^3"));
  CHECK(r3.points.size() == 2);
  CHECK(r3.sum_e_minus_1 == 4);
  CHECK(!r3.hurwitz_total_ramification);
}

TEST_CASE("classification matrix works on a twisted strange cubic") {
  auto f9 = Field::parse("F9");
  Mat3 m = Mat3::identity(f9);
  m.a[0][1] = FV::of_ext(f9, {0, 1});
  m.a[2][0] = FV::of_int(f9, 2);
  TriPoly tw = substitute(normal_form_implicit(f9, CubicTag::StrangeChar3), m);
  auto cl = classify_cubic(PlaneCurve::from_implicit(tw));
  CHECK(cl.tag == CubicTag::StrangeChar3);
  REQUIRE(cl.to_normal.has_value());
  TriPoly back = substitute(normal_form_implicit(f9, CubicTag::StrangeChar3), *cl.to_normal);
  CHECK(back.proportional(tw));
}

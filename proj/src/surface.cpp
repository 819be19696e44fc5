#include "dpz/surface.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace dpz {

namespace {

struct Obj {
  bool exc = false;
  int curve = -1;  // config index
  P1 param;        // branch parameter
  int center = -1; // creating center (exceptionals)
};

struct Site {
  std::vector<int> objs;
  std::map<int, Int> mult;
  std::map<std::pair<int, int>, Int> gamma;
  bool live = true;
  int on_center = -1;  // -1: plane point, else sits on that exceptional
  PPoint plane_point;
};

std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

const SurfaceModel::CurveRec& SurfaceModel::curve(const std::string& label) const {
  auto it = index.find(label);
  if (it == index.end()) fail("UnknownCurve", label);
  return curves[it->second];
}

Int SurfaceModel::meet(const std::string& a, const std::string& b) const {
  int i = index.at(a), j = index.at(b);
  if (i == j) fail("BadArgument", "meet of a curve with itself");
  auto it = incidence.find(key(i, j));
  return it == incidence.end() ? 0 : it->second;
}

mpq_class self_intersection(const SurfaceModel& m, const DivisorClass& c) {
  return pair(c, c);
}

mpq_class arith_genus(const SurfaceModel& m, const DivisorClass& c) {
  mpq_class g = 1 + (pair(c, c) + pair(c, m.K)) / 2;
  g.canonicalize();
  return g;
}

SurfaceModel build_surface(const FieldPtr& field,
                           const std::vector<TrackedCurve>& config,
                           const BlowupPlan& plan) {
  for (auto& tc : config) {
    if (!tc.curve.param) fail("NoParam", "tracked curve " + tc.label);
    if (tc.curve.implicit.f == nullptr || !tc.curve.implicit.f->same(*field))
      fail("DescriptorMismatch", "curve " + tc.label + " over a different field");
  }
  for (size_t i = 0; i < config.size(); ++i)
    for (size_t j = i + 1; j < config.size(); ++j)
      if (config[i].curve.implicit.proportional(config[j].curve.implicit))
        fail("BadArgument", "curves " + config[i].label + " and " +
                                config[j].label + " coincide");

  int ncfg = (int)config.size();
  int ncen = (int)plan.centers.size();

  // pairwise totals: rational intersection points with valuation mass, plus
  // the residual mass at nonrational points
  struct PairData {
    std::vector<std::pair<PPoint, Int>> at;  // plane point -> total contact
    Int irrational = 0;
  };
  std::map<std::pair<int, int>, PairData> totals;
  for (int i = 0; i < ncfg; ++i)
    for (int j = i + 1; j < ncfg; ++j) {
      BinForm pb = config[j].curve.implicit.pullback(*config[i].curve.param);
      if (pb.is_zero()) fail("BadArgument", "tracked curves share a component");
      PairData pd;
      Int seen = 0;
      auto roots = roots_of_binary_form(pb);
      // group roots by image point
      for (auto& [t, v] : roots.roots) {
        PPoint p = config[i].curve.at(t);
        bool foundp = false;
        for (auto& [q, tot] : pd.at)
          if (q == p) {
            tot += v;
            foundp = true;
          }
        if (!foundp) pd.at.push_back({p, v});
        seen += v;
      }
      pd.irrational = (Int)config[i].curve.degree * config[j].curve.degree - seen;
      totals[{i, j}] = std::move(pd);
    }

  std::vector<Obj> objs;
  std::vector<Site> sites;
  std::map<int, int> site_of_center;            // center -> site blown there
  std::vector<std::vector<int>> children(ncen); // center -> centers on its E
  std::vector<std::map<int, Int>> curve_mult(ncfg);  // curve -> center -> mult
  std::set<std::string> consumed_points;             // plane points with sites

  auto tangent_of = [&](int ci, const P1& t) {
    return tangent_line(config[ci].curve, t);
  };

  auto point_key = [](const PPoint& p) {
    return p.x[0].str() + "|" + p.x[1].str() + "|" + p.x[2].str();
  };

  // build the initial site at a plane point
  auto init_site = [&](const PPoint& p) -> int {
    Site s;
    s.plane_point = p;
    s.on_center = -1;
    struct Branch {
      int obj;
      int curve;
      P1 t;
      Int m;
      PlaneCurve tangent;
    };
    std::vector<Branch> branches;
    for (int ci = 0; ci < ncfg; ++ci) {
      if (!config[ci].curve.implicit.eval(p).is_zero()) continue;
      auto pps = point_params(config[ci].curve, p);
      Int massm = 0;
      for (auto& [t, m] : pps) massm += m;
      // every branch through a blown point must be rational
      // (total branch mass at p equals the curve's multiplicity there)
      if ((Int)multiplicity_at(config[ci].curve.implicit, p) != massm)
        fail("UnsupportedField", "nonrational branch of " + config[ci].label +
                                     " at " + p.str());
      for (auto& [t, m] : pps) {
        Obj o;
        o.curve = ci;
        o.param = t;
        int id = (int)objs.size();
        objs.push_back(o);
        s.objs.push_back(id);
        s.mult[id] = m;
        branches.push_back({id, ci, t, m, tangent_of(ci, t)});
      }
    }
    // pairwise contacts
    auto same_line = [](const PlaneCurve& a, const PlaneCurve& b) {
      return a.implicit.proportional(b.implicit);
    };
    auto distribute = [&](const Branch& b, int other_curve) {
      // contact of branch b with each branch of other_curve at p
      std::vector<const Branch*> ob;
      for (auto& x : branches)
        if (x.curve == other_curve) ob.push_back(&x);
      Int v = local_mult(config[b.curve].curve, config[other_curve].curve, b.t);
      std::map<int, Int> out;
      if (ob.size() == 1) {
        out[ob[0]->obj] = v;
        return out;
      }
      if (ob.size() != 2)
        fail("Unsupported", "more than two branches at a point");
      bool tan0 = same_line(b.tangent, ob[0]->tangent);
      bool tan1 = same_line(b.tangent, ob[1]->tangent);
      if (tan0 && tan1) fail("Unsupported", "tangent branches of a node");
      if (!tan0 && !tan1) {
        out[ob[0]->obj] = b.m * ob[0]->m;
        out[ob[1]->obj] = b.m * ob[1]->m;
        if (out[ob[0]->obj] + out[ob[1]->obj] != v)
          fail("InternalError", "contact distribution mismatch");
      } else {
        int t = tan0 ? 0 : 1;
        out[ob[1 - t]->obj] = b.m * ob[1 - t]->m;
        out[ob[t]->obj] = v - out[ob[1 - t]->obj];
      }
      return out;
    };
    for (size_t a = 0; a < branches.size(); ++a)
      for (size_t b = a + 1; b < branches.size(); ++b) {
        const Branch &ba = branches[a], &bb = branches[b];
        Int g;
        if (ba.curve == bb.curve) {
          if (same_line(ba.tangent, bb.tangent))
            fail("Unsupported", "tangent branches of one curve");
          g = ba.m * bb.m;
        } else {
          auto d1 = distribute(ba, bb.curve);
          auto d2 = distribute(bb, ba.curve);
          g = d1.at(bb.obj);
          if (g != d2.at(ba.obj))
            fail("InternalError", "asymmetric branch contact");
        }
        s.gamma[key(ba.obj, bb.obj)] = g;
      }
    sites.push_back(std::move(s));
    consumed_points.insert(point_key(p));
    return (int)sites.size() - 1;
  };

  // process the centers
  std::vector<std::vector<int>> child_sites(ncen);  // center -> its new sites
  for (int c = 0; c < ncen; ++c) {
    const Center& cen = plan.centers[c];
    int sid = -1;
    if (cen.kind == Center::PlanePoint) {
      // reuse an existing live plane site at this point if present
      for (int i = 0; i < (int)sites.size(); ++i)
        if (sites[i].live && sites[i].on_center == -1 &&
            sites[i].plane_point == cen.point)
          sid = i;
      if (sid < 0) sid = init_site(cen.point);
    } else if (cen.kind == Center::OnExcMeet) {
      if (cen.parent < 0 || cen.parent >= c || cen.other_exc < 0 ||
          cen.other_exc >= c)
        fail("BadPlan", "infinitely-near reference must point backwards");
      for (int s2 : child_sites[cen.parent]) {
        if (!sites[s2].live) continue;
        for (int o : sites[s2].objs)
          if (objs[o].exc && objs[o].center == cen.other_exc) sid = s2;
      }
      if (sid < 0)
        fail("CenterNotOnCurve", "exceptional " + std::to_string(cen.other_exc) +
                                     " does not meet the new exceptional over " +
                                     std::to_string(cen.parent));
    } else {
      if (cen.parent < 0 || cen.parent >= c)
        fail("BadPlan", "infinitely-near reference must point backwards");
      // find the carrier branch object among the parent's children
      auto cit = std::find_if(config.begin(), config.end(), [&](auto& tc) {
        return tc.label == cen.carrier;
      });
      if (cit == config.end()) fail("UnknownCurve", cen.carrier);
      int ci = (int)(cit - config.begin());
      std::vector<int> carrier_objs;
      for (int s2 : child_sites[cen.parent]) {
        if (!sites[s2].live) continue;
        for (int o : sites[s2].objs)
          if (!objs[o].exc && objs[o].curve == ci) {
            if (cen.branch && !(objs[o].param == *cen.branch)) continue;
            carrier_objs.push_back(s2);
          }
      }
      if (carrier_objs.empty())
        fail("CenterNotOnCurve", "proper transform of " + cen.carrier +
                                     " misses the center over parent " +
                                     std::to_string(cen.parent));
      std::sort(carrier_objs.begin(), carrier_objs.end());
      carrier_objs.erase(std::unique(carrier_objs.begin(), carrier_objs.end()),
                         carrier_objs.end());
      if (carrier_objs.size() > 1)
        fail("TangentDirectionAmbiguous",
             cen.carrier + " has several branches over parent " +
                 std::to_string(cen.parent));
      sid = carrier_objs[0];
    }

    Site& s = sites[sid];
    if (!s.live) fail("BadPlan", "center on a dead site");
    site_of_center[c] = sid;

    // accrue multiplicities / class subtractions (the exceptional carrying
    // this site is itself an object of the site)
    for (int o : s.objs) {
      if (objs[o].exc)
        children[objs[o].center].push_back(c);
      else
        curve_mult[objs[o].curve][c] += s.mult[o];
    }

    // new exceptional object
    Obj xo;
    xo.exc = true;
    xo.center = c;
    int xid = (int)objs.size();
    objs.push_back(xo);

    // residual contacts and grouping
    std::map<std::pair<int, int>, Int> resid;
    for (auto& [k, g] : s.gamma) {
      Int r = g - s.mult.at(k.first) * s.mult.at(k.second);
      if (r < 0) fail("InternalError", "negative residual contact");
      resid[k] = r;
    }
    // union-find over objects with residual >= 1
    std::map<int, int> uf;
    for (int o : s.objs) uf[o] = o;
    std::function<int(int)> find = [&](int x) {
      return uf[x] == x ? x : uf[x] = find(uf[x]);
    };
    for (auto& [k, r] : resid)
      if (r >= 1) uf[find(k.first)] = find(k.second);
    std::map<int, std::vector<int>> groups;
    for (int o : s.objs) groups[find(o)].push_back(o);

    for (auto& [root, members] : groups) {
      Site ns;
      ns.on_center = c;
      for (int o : members) {
        ns.objs.push_back(o);
        Int old = s.mult.at(o);
        Int next = objs[o].exc ? 1 : (old >= 2 ? old - 1 : 1);
        if (!objs[o].exc && old > 2)
          fail("Unsupported", "branch multiplicity above 2");
        ns.mult[o] = next;
        ns.gamma[key(o, xid)] = old;
      }
      ns.objs.push_back(xid);
      ns.mult[xid] = 1;
      for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b) {
          Int r = resid[key(members[a], members[b])];
          if (r >= 1) ns.gamma[key(members[a], members[b])] = r;
        }
      sites.push_back(std::move(ns));
      child_sites[c].push_back((int)sites.size() - 1);
    }
    sites[sid].live = false;
  }

  // assemble the model
  SurfaceModel m;
  m.field = field;
  m.rank = 1 + ncen;
  m.K = canonical_class(m.rank);
  for (int ci = 0; ci < ncfg; ++ci) {
    SurfaceModel::CurveRec r;
    r.label = config[ci].label;
    r.cls = DivisorClass(m.rank);
    r.cls.v[0] = (long)config[ci].curve.degree;
    int pa = config[ci].plane_pa;
    for (auto& [c, mu] : curve_mult[ci]) {
      r.cls.v[1 + c] = -(long)mu;
      pa -= (int)(mu * (mu - 1) / 2);
    }
    r.pa = pa;
    m.index[r.label] = (int)m.curves.size();
    m.curves.push_back(std::move(r));
  }
  for (int c = 0; c < ncen; ++c) {
    SurfaceModel::CurveRec r;
    r.label = "E" + std::to_string(c + 1);
    r.exceptional = true;
    r.cls = DivisorClass(m.rank);
    r.cls.v[1 + c] = 1;
    std::set<int> ch(children[c].begin(), children[c].end());
    for (int c2 : ch) r.cls.v[1 + c2] = -1;
    r.pa = 0;
    m.index[r.label] = (int)m.curves.size();
    m.curves.push_back(std::move(r));
  }
  for (auto& r : m.curves) {
    mpq_class s = pair(r.cls, r.cls);
    if (s.get_den() != 1) fail("InternalError", "nonintegral self-intersection");
    r.self = (Int)s.get_num().get_si();
  }

  // geometric incidence
  auto obj_model_index = [&](int o) {
    return objs[o].exc ? ncfg + objs[o].center : objs[o].curve;
  };
  for (auto& [pr, pd] : totals) {
    Int tot = pd.irrational;
    for (auto& [p, v] : pd.at)
      if (!consumed_points.count(point_key(p))) tot += v;
    if (tot != 0) m.incidence[key(pr.first, pr.second)] += tot;
  }
  for (auto& s : sites) {
    if (!s.live) continue;
    for (auto& [k, g] : s.gamma) {
      if (g == 0) continue;
      int a = obj_model_index(k.first), b = obj_model_index(k.second);
      if (a == b) continue;  // two branches of one curve meeting: self-contact
      m.incidence[key(a, b)] += g;
    }
  }

  // cross-validation: lattice pairing equals geometric incidence, adjunction
  // holds with the computed arithmetic genus
  for (size_t i = 0; i < m.curves.size(); ++i)
    for (size_t j = i + 1; j < m.curves.size(); ++j) {
      mpq_class lat = pair(m.curves[i].cls, m.curves[j].cls);
      auto it = m.incidence.find(key((int)i, (int)j));
      Int geo = it == m.incidence.end() ? 0 : it->second;
      if (lat != geo)
        fail("InternalError", "incidence mismatch for " + m.curves[i].label +
                                  "." + m.curves[j].label + ": lattice " +
                                  q_str(lat) + " vs geometric " +
                                  std::to_string(geo));
    }
  for (auto& r : m.curves) {
    mpq_class lhs = pair(r.cls, r.cls) + pair(r.cls, m.K);
    if (lhs != 2 * r.pa - 2)
      fail("InternalError", "adjunction fails for " + r.label);
  }
  return m;
}

bool noether_check(const SurfaceModel& m, const std::string& anticanonical) {
  const auto& t = m.curve(anticanonical);
  DivisorClass mk = m.K.scaled(-1);
  if (!(t.cls == mk)) return false;
  mpq_class t2 = pair(t.cls, t.cls);
  return mpq_class(m.rank) == 10 - t2;
}

std::vector<std::string> singularity_type(const SurfaceModel& m,
                                          const std::vector<std::string>& boundary) {
  std::vector<int> idx;
  for (auto& l : boundary) {
    const auto& c = m.curve(l);
    if (c.self != -2) fail("NotMinusTwo", l + " is not a (-2)-curve");
    idx.push_back(m.index.at(l));
  }
  int n = (int)idx.size();
  // connected components of the incidence graph
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack = {i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        if (comp[w] >= 0) continue;
        auto it = m.incidence.find(key(idx[v], idx[w]));
        if (it != m.incidence.end() && it->second > 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
      }
    }
    ++ncomp;
  }
  std::vector<std::string> out;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> vs;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) vs.push_back(i);
    WeightedForest g;
    for (size_t a = 0; a < vs.size(); ++a) g.weight.push_back(-2);
    for (size_t a = 0; a < vs.size(); ++a)
      for (size_t b = a + 1; b < vs.size(); ++b) {
        auto it = m.incidence.find(key(idx[vs[a]], idx[vs[b]]));
        if (it != m.incidence.end() && it->second > 0) {
          if (it->second > 1) fail("NotNegativeDefinite", "double incidence");
          g.edges.push_back({(int)a, (int)b});
        }
      }
    auto t = ade_classify(g);
    if (!t.is_ade()) fail("NotNegativeDefinite", "component is not ADE");
    out.push_back(t.str());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MinusOneClass> minus_one_classes(const SurfaceModel& m, int d_max) {
  if (d_max < 1) fail("BadArgument", "d_max >= 1");
  int n = m.rank - 1;
  std::vector<MinusOneClass> out;
  for (int d = 0; d <= d_max; ++d) {
    long long sum_target = 3LL * d - 1;
    long long sq_target = (long long)d * d + 1;
    std::vector<long long> mcur(n, 0);
    std::function<void(int, long long, long long)> rec = [&](int i, long long s,
                                                             long long q) {
      int r = n - i;
      long long srem = sum_target - s, qrem = sq_target - q;
      if (qrem < 0) return;
      if (r == 0) {
        if (srem != 0 || qrem != 0) return;
        DivisorClass c(m.rank);
        c.v[0] = d;
        for (int k = 0; k < n; ++k) c.v[1 + k] = -(long)mcur[k];
        out.push_back({c, true, ""});
        return;
      }
      if (srem > (long long)r * d || srem < -(long long)r * d) return;
      if (qrem > (long long)r * d * d) return;
      // Cauchy-Schwarz: r*qrem >= srem^2
      if ((long long)r * qrem < srem * srem) return;
      for (long long v = -d; v <= d; ++v) {
        mcur[i] = v;
        rec(i + 1, s + v, q + v * v);
      }
    };
    rec(0, 0, 0);
  }
  // decomposability filter against tracked negative curves
  for (auto& cand : out) {
    DivisorClass c = cand.cls;
    std::string decomp;
    bool changed = true;
    int guard = 0;
    while (changed && ++guard < 64) {
      changed = false;
      for (auto& r : m.curves) {
        if (r.self >= 0) continue;
        if (r.cls == cand.cls) continue;
        if (pair(c, r.cls) < 0 && !(c == r.cls)) {
          c = c - r.cls;
          decomp += (decomp.empty() ? "" : " + ") + r.label;
          changed = true;
          cand.irreducible_candidate = false;
        }
      }
    }
    if (!cand.irreducible_candidate) cand.decomposition = decomp + " + remainder";
  }
  // deterministic order: degree, then lexicographic
  std::sort(out.begin(), out.end(), [](const MinusOneClass& a, const MinusOneClass& b) {
    return a.cls.v < b.cls.v;
  });
  return out;
}

namespace {

struct VerticalCurve {
  std::string label;
  DivisorClass cls;
  Int self;
  bool in_boundary;
};

// try to decompose the vertical curves into valid degenerate fibers of class f
bool decompose_fibers(const SurfaceModel& m, const DivisorClass& f,
                      const std::vector<std::string>& boundary,
                      const std::vector<MinusOneClass>& mos,
                      std::vector<FiberDecomposition>& fibers) {
  fibers.clear();
  std::set<std::string> bset(boundary.begin(), boundary.end());
  std::vector<VerticalCurve> vert;
  for (auto& r : m.curves) {
    if (r.self == 0 && r.cls == f && bset.count(r.label)) {
      // a nondegenerate fiber sitting inside the boundary
      FiberDecomposition fd;
      fd.members = {r.label};
      fd.mult = {1};
      fd.graph = WeightedForest::chain({0});
      fd.sigma = 0;
      fd.in_boundary = true;
      fibers.push_back(std::move(fd));
      continue;
    }
    if (r.self >= 0) continue;
    if (pair(r.cls, f) == 0)
      vert.push_back({r.label, r.cls, r.self, bset.count(r.label) > 0});
  }
  int k = 0;
  for (auto& mo : mos) {
    if (!mo.irreducible_candidate) continue;
    if (pair(mo.cls, f) != 0) continue;
    bool dup = false;
    for (auto& v : vert)
      if (v.cls == mo.cls) dup = true;
    if (dup) continue;
    vert.push_back({"(-1)#" + std::to_string(++k), mo.cls, -1, false});
  }
  int n = (int)vert.size();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack = {i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        if (comp[w] >= 0) continue;
        if (pair(vert[v].cls, vert[w].cls) > 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
      }
    }
    ++ncomp;
  }
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> vs;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) vs.push_back(i);
    FiberDecomposition fd;
    WeightedForest g;
    for (size_t a = 0; a < vs.size(); ++a) {
      g.weight.push_back(vert[vs[a]].self);
      fd.members.push_back(vert[vs[a]].label);
    }
    for (size_t a = 0; a < vs.size(); ++a)
      for (size_t b = a + 1; b < vs.size(); ++b) {
        mpq_class p = pair(vert[vs[a]].cls, vert[vs[b]].cls);
        if (p > 1) return false;  // fibers are simple normal crossing trees
        if (p == 1) g.edges.push_back({(int)a, (int)b});
      }
    auto res = blowdown_to_zero(g);
    if (!res.ok) return false;
    // the multiplicity-weighted class sum must reproduce f exactly
    DivisorClass sum(m.rank);
    for (size_t a = 0; a < vs.size(); ++a)
      sum = sum + vert[vs[a]].cls.scaled(mpq_class(res.mult[a]));
    if (!(sum == f)) return false;
    fd.graph = g;
    fd.mult = res.mult;
    fd.sigma = 0;
    fd.in_boundary = true;
    for (size_t a = 0; a < vs.size(); ++a) {
      if (!vert[vs[a]].in_boundary) {
        ++fd.sigma;
        fd.in_boundary = false;
      }
    }
    fibers.push_back(std::move(fd));
  }
  return true;
}

}  // namespace

FiberSearchResult fiber_search(const SurfaceModel& m,
                               const std::vector<std::string>& boundary,
                               int d_max) {
  if (d_max < 1) fail("BadArgument", "d_max >= 1");
  FiberSearchResult out;
  out.d_max = d_max;
  int n = m.rank - 1;
  DivisorClass dsum(m.rank);
  for (auto& l : boundary) dsum = dsum + m.cls(l);

  // children constraints from exceptional curve classes: m_c >= sum(children)
  std::vector<std::vector<int>> kids(n);
  for (auto& r : m.curves) {
    if (!r.exceptional) continue;
    int own = -1;
    for (int i = 0; i < n; ++i)
      if (r.cls.v[1 + i] == 1) own = i;
    for (int i = 0; i < n; ++i)
      if (r.cls.v[1 + i] == -1) kids[own].push_back(i);
  }

  std::vector<std::pair<mpq_class, DivisorClass>> candidates;
  for (int d = 1; d <= d_max; ++d) {
    long long sum_target = 3LL * d - 2;
    long long sq_target = (long long)d * d;
    std::vector<long long> mc(n, 0);
    // assign deepest centers first so child sums are known
    std::function<void(int, long long, long long)> rec = [&](int i, long long s,
                                                             long long q) {
      if (i < 0) {
        if (s != sum_target || q != sq_target) return;
        DivisorClass f(m.rank);
        f.v[0] = d;
        for (int k2 = 0; k2 < n; ++k2) f.v[1 + k2] = -(long)mc[k2];
        for (auto& r : m.curves)
          if (pair(f, r.cls) < 0) return;  // not nef on a tracked curve
        candidates.push_back({pair(f, dsum), f});
        return;
      }
      int r = i + 1;  // remaining slots: indices 0..i
      long long srem = sum_target - s, qrem = sq_target - q;
      if (srem < 0 || qrem < 0) return;
      if (srem > (long long)r * d) return;
      if ((long long)r * qrem < srem * srem) return;
      long long lo = 0;
      for (int c : kids[i]) lo += mc[c];
      for (long long v = lo; v <= d; ++v) {
        mc[i] = v;
        rec(i - 1, s + v, q + v * v);
      }
      mc[i] = 0;
    };
    rec(n - 1, 0, 0);
  }
  if (candidates.empty()) {
    out.note = "NoFiberFound: no nef class with F^2=0, F.K=-2 up to degree " +
               std::to_string(d_max) + "; raise d_max";
    return out;
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first < b.first;
              return a.second.v < b.second.v;
            });
  out.weak_lower_bound = candidates.front().first;
  auto mos = minus_one_classes(m, std::min(d_max, 3));
  for (auto& [h, f] : candidates) {
    bool nef_on_minus_ones = true;
    for (auto& mo : mos)
      if (mo.irreducible_candidate && pair(f, mo.cls) < 0) {
        nef_on_minus_ones = false;
        break;
      }
    if (!nef_on_minus_ones) continue;
    std::vector<FiberDecomposition> fibers;
    if (!decompose_fibers(m, f, boundary, mos, fibers)) continue;
    out.found = true;
    out.height = h;
    out.witness = f;
    out.fibers = std::move(fibers);
    if (out.height != out.weak_lower_bound) {
      out.note = "candidates below the witness height failed the fiber "
                 "decomposition certificate";
    }
    return out;
  }
  out.note = "NoFiberFound: candidates exist but none passed the "
             "decomposition certificate; raise d_max";
  return out;
}

CountingIdentity counting_identity(const SurfaceModel& m,
                                   const FiberSearchResult& witness,
                                   const std::vector<std::string>& boundary) {
  CountingIdentity out;
  if (!witness.found) fail("IncompleteDecomposition", "no witness fibration");
  out.rho = m.rank;
  out.d_components = (long long)boundary.size();
  for (auto& l : boundary) {
    mpq_class p = pair(m.cls(l), witness.witness);
    if (p > 0) ++out.d_hor;
  }
  for (auto& f : witness.fibers) {
    std::ostringstream os;
    os << "fiber {";
    for (size_t i = 0; i < f.members.size(); ++i)
      os << (i ? "," : "") << f.members[i];
    os << "} sigma=" << f.sigma << (f.in_boundary ? " (inside D)" : "");
    out.ledger.push_back(os.str());
    if (f.in_boundary)
      ++out.nu_infinity;
    else
      out.sigma_excess += f.sigma - 1;
  }
  out.holds = (out.d_hor + out.nu_infinity + out.rho ==
               out.d_components + 2 + out.sigma_excess);
  return out;
}

std::string SurfaceModel::dump_json() const {
  nlohmann::json j;
  j["rank"] = rank;
  j["basis"] = nlohmann::json::array();
  j["basis"].push_back("H");
  for (int i = 1; i < rank; ++i) j["basis"].push_back("e" + std::to_string(i));
  j["K"] = K.str();
  j["curves"] = nlohmann::json::array();
  for (auto& c : curves) {
    nlohmann::json jc;
    jc["label"] = c.label;
    jc["class"] = c.cls.str();
    jc["self"] = (long long)c.self;
    jc["pa"] = c.pa;
    jc["exceptional"] = c.exceptional;
    j["curves"].push_back(jc);
  }
  j["incidence"] = nlohmann::json::array();
  for (auto& [k, v] : incidence) {
    if (v == 0) continue;
    j["incidence"].push_back({{"a", curves[k.first].label},
                              {"b", curves[k.second].label},
                              {"n", (long long)v}});
  }
  j["boundary"] = boundary;
  return j.dump(2);
}

}  // namespace dpz

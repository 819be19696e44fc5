#pragma once
// Picard-lattice model of an iterated blowup of P^2 with tracked curve
// classes and geometric incidence, built from parametrized plane curves and
// a blowup plan. Carries the fibration-height search, (-1)-class
// enumeration, singularity-type detection and the fiber-counting identity.

#include "dpz/graph.hpp"
#include "dpz/lattice.hpp"
#include "dpz/plane.hpp"

#include <map>
#include <set>

namespace dpz {

struct TrackedCurve {
  std::string label;
  PlaneCurve curve;   // parametrization required
  int plane_pa = 0;   // arithmetic genus of the plane model (0 or 1)
};

struct Center {
  enum Kind { PlanePoint, OnCarrier, OnExcMeet } kind = PlanePoint;
  PPoint point;          // PlanePoint: the center itself
  int parent = -1;       // OnCarrier/OnExcMeet: index of the previous center
  std::string carrier;   // OnCarrier: curve whose proper transform holds it
  int other_exc = -1;    // OnExcMeet: meet E(parent) with this exceptional
  std::optional<P1> branch;  // disambiguates the carrier branch when singular

  static Center at(const PPoint& p) {
    Center c;
    c.kind = PlanePoint;
    c.point = p;
    return c;
  }
  static Center on(int parent, const std::string& carrier,
                   std::optional<P1> branch = std::nullopt) {
    Center c;
    c.kind = OnCarrier;
    c.parent = parent;
    c.carrier = carrier;
    c.branch = branch;
    return c;
  }
  static Center exc_meet(int parent, int other_exc) {
    Center c;
    c.kind = OnExcMeet;
    c.parent = parent;
    c.other_exc = other_exc;
    return c;
  }
};

struct BlowupPlan {
  std::vector<Center> centers;
};

struct SurfaceModel {
  FieldPtr field;
  int rank = 1;  // 1 + number of centers
  struct CurveRec {
    std::string label;
    DivisorClass cls;
    bool exceptional = false;
    int pa = 0;
    Int self = 0;
  };
  std::vector<CurveRec> curves;
  std::map<std::string, int> index;
  std::map<std::pair<int, int>, Int> incidence;  // geometric intersections
  std::vector<std::string> boundary;             // labels of boundary curves
  DivisorClass K;

  const CurveRec& curve(const std::string& label) const;
  Int meet(const std::string& a, const std::string& b) const;
  DivisorClass cls(const std::string& label) const { return curve(label).cls; }
  std::string dump_json() const;
};

// Build the model; validates classes against geometric incidence and the
// adjunction formula for every tracked curve.
SurfaceModel build_surface(const FieldPtr& field,
                           const std::vector<TrackedCurve>& config,
                           const BlowupPlan& plan);

mpq_class self_intersection(const SurfaceModel& m, const DivisorClass& c);
mpq_class arith_genus(const SurfaceModel& m, const DivisorClass& c);

// K = -(3/7)D - (2/7)U style identities are checked by plain class algebra.
bool noether_check(const SurfaceModel& m, const std::string& anticanonical);

// ADE labels of the boundary components (incidence graph of (-2)-curves).
std::vector<std::string> singularity_type(const SurfaceModel& m,
                                          const std::vector<std::string>& boundary);

struct MinusOneClass {
  DivisorClass cls;
  bool irreducible_candidate = true;
  std::string decomposition;  // how the filter split it, when decomposable
};
std::vector<MinusOneClass> minus_one_classes(const SurfaceModel& m, int d_max);

struct FiberDecomposition {
  std::vector<std::string> members;   // labels; synthetic "(-1)#k" for classes
  std::vector<mpz_class> mult;
  WeightedForest graph;
  int sigma = 0;       // members not in the boundary
  bool in_boundary = false;
};

struct FiberSearchResult {
  bool found = false;
  int d_max = 0;
  mpq_class height;               // min F.D over certified candidates
  DivisorClass witness;
  std::vector<FiberDecomposition> fibers;
  // every class with F^2=0, F.K=-2, F nef against the tracked curves has
  // F.D >= height (exhaustive up to d_max): the bounded certificate
  mpq_class weak_lower_bound;
  std::string note;
};
FiberSearchResult fiber_search(const SurfaceModel& m,
                               const std::vector<std::string>& boundary,
                               int d_max = 12);

struct CountingIdentity {
  bool holds = false;
  long long d_hor = 0, nu_infinity = 0, rho = 0, d_components = 0;
  long long sigma_excess = 0;  // sum over fibers of (sigma - 1)
  std::vector<std::string> ledger;
};
CountingIdentity counting_identity(const SurfaceModel& m,
                                   const FiberSearchResult& witness,
                                   const std::vector<std::string>& boundary);

}  // namespace dpz

#pragma once
// Weighted dual-graph calculus: discriminants, coefficient formulas,
// admissibility, adjoint chains, degenerate-fiber shapes, ADE recognition.

#include "dpz/numkit.hpp"

#include <array>
#include <optional>

namespace dpz {

// Dual graph of a curve arrangement. Vertex weights are self-intersections;
// edges are transversal intersections. Trees unless allow_cycles is set.
struct WeightedForest {
  std::vector<Int> weight;                 // weight[v] = self-intersection
  std::vector<std::pair<int, int>> edges;  // vertex index pairs
  bool allow_cycles = false;

  int n() const { return (int)weight.size(); }
  std::vector<std::vector<int>> adjacency() const;
  std::vector<std::vector<mpz_class>> minus_intersection_matrix() const;
  void validate() const;  // no loops/multi-edges; acyclic unless flagged
  static WeightedForest chain(const std::vector<Int>& minus_weights);
  static WeightedForest from_json(const std::string& text);
  std::string to_json(const std::vector<mpz_class>* mult = nullptr) const;
};

// Chain type [a1,...,an] with a_i = -(self-intersection); may be empty.
using Chain = std::vector<Int>;

struct Fork {
  Int b = 2;                   // minus the branching self-intersection
  std::array<Chain, 3> twigs;  // unordered triple
};

bool chain_admissible(const Chain& t);
bool fork_admissible(const Fork& f);

mpz_class chain_discriminant(const Chain& t);  // d(empty) = 1
mpz_class discriminant(const WeightedForest& g);
bool is_negative_definite(const WeightedForest& g);

// Lemma-style coefficient formulas; all exact rationals in [0,1).
std::vector<mpq_class> chain_coefficients(const Chain& t);
struct ForkCoefficients {
  mpq_class branch;
  std::array<std::vector<mpq_class>, 3> twigs;
  mpq_class delta, e;
};
ForkCoefficients fork_coefficients(const Fork& f);
std::vector<mpq_class> twig_coefficients(const Chain& t);

// Platonic triple recognition on twig discriminants.
struct PlatonicInfo {
  bool platonic = false;
  std::string family;  // "{2,3,5}", "{2,3,4}", "{2,3,3}", "{2,2,k}"
  std::array<mpz_class, 3> discs;
};
PlatonicInfo is_platonic(const Fork& f);

// The adjoint chain T* with [T,1,T*] a degenerate fiber, certified by the
// blowdown oracle. Concatenation order: T* starts at the (-1)-curve.
Chain adjoint_chain(const Chain& t);

struct BlowdownResult {
  bool ok = false;
  std::string error;                // NotCorankOne / branching (-1) / ...
  std::vector<mpz_class> mult;      // primitive positive kernel vector
  std::vector<std::string> trace;   // one line per contraction
};
BlowdownResult blowdown_to_zero(const WeightedForest& g);

struct FiberShape {
  WeightedForest graph;
  std::vector<mpz_class> mult;
  std::vector<int> minus_one_positions;
  std::string tag;  // "[1,(2)k,1]" | "[2,1,2]" | "<2;[1,(2)k],[2],[2]>"
};
std::vector<FiberShape> enumerate_canonical_fibers(int max_vertices);

// Independent oracle: all weighted trees on <= max_vertices vertices with
// weights in {-1,-2} whose kernel/blowdown data make them fibers, up to
// isomorphism. Used to cross-check enumerate_canonical_fibers.
std::vector<FiberShape> brute_force_canonical_fibers(int max_vertices);
std::string weighted_tree_code(const WeightedForest& g);  // canonical code

struct AdeType {
  std::string letter;  // "A","D","E" or "" when NotADE
  int n = 0;
  bool is_ade() const { return !letter.empty(); }
  std::string str() const { return is_ade() ? letter + std::to_string(n) : "NotADE"; }
};
AdeType ade_classify(const WeightedForest& g);

// Coefficient monotonicity harness: D admissible chain, Dp a contiguous
// subchain starting at `offset` with componentwise weaker weights.
bool alexeev_compare_chains(const Chain& d, int offset, const Chain& dp);
bool alexeev_compare_forks(const Fork& d, const Fork& dp);

Chain parse_chain(const std::string& text);
Fork parse_fork(const std::string& text);
// "[2,3,*1*,2,3]" fiber literal with (-1) markers
WeightedForest parse_fiber_chain(const std::string& text);
std::string chain_str(const Chain& t);

}  // namespace dpz

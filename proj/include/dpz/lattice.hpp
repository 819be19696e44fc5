#pragma once
// Picard-lattice vectors in the H, E1..En basis (diagonal form +1,-1,...,-1)
// and Smith normal form over Z.

#include "dpz/numkit.hpp"

namespace dpz {

// coordinate vector in the H,E_i basis; rational entries allowed for
// K-combination identities, classes of curves are integral
struct DivisorClass {
  std::vector<mpq_class> v;  // v[0] = H coefficient, v[i] = E_i coefficient

  DivisorClass() = default;
  explicit DivisorClass(int rank) : v(rank, 0) {}
  int rank() const { return (int)v.size(); }
  bool integral() const;
  DivisorClass operator+(const DivisorClass& o) const;
  DivisorClass operator-(const DivisorClass& o) const;
  DivisorClass scaled(const mpq_class& k) const;
  bool operator==(const DivisorClass& o) const { return v == o.v; }
  std::string str() const;
};

mpq_class pair(const DivisorClass& a, const DivisorClass& b);
DivisorClass canonical_class(int rank);  // -3H + sum E_i

struct SmithResult {
  // U * A * V = D with D diagonal (elementary divisors d_1 | d_2 | ...)
  std::vector<std::vector<mpz_class>> U, V, D;
  std::vector<mpz_class> divisors;  // nonzero elementary divisors
  int rank = 0;
};
SmithResult smith_normal_form(std::vector<std::vector<mpz_class>> a);

// Is w in the row lattice of N (integer solution x of x N = w)?
bool in_row_lattice(const std::vector<std::vector<mpz_class>>& n,
                    const std::vector<mpz_class>& w);
// Order of w in Z^m / rowlattice(N): smallest k >= 1 with k*w in the lattice,
// or 0 if the image has infinite order.
mpz_class order_in_quotient(const std::vector<std::vector<mpz_class>>& n,
                            const std::vector<mpz_class>& w);
// Is w in the F_p row span of N?
bool in_row_span_mod_p(const std::vector<std::vector<mpz_class>>& n,
                       const std::vector<mpz_class>& w, Int p);
// Is w in the Q row span of N?
bool in_row_span_q(const std::vector<std::vector<mpz_class>>& n,
                   const std::vector<mpz_class>& w);

// Structure of Z^m / rowlattice(N): free rank and torsion divisors, plus a
// basis expressing the generators e_i in the quotient's coordinates.
struct QuotientStructure {
  int free_rank = 0;
  std::vector<mpz_class> torsion;  // the d_i > 1
  // coords[i] = coordinates of e_i: first free_rank entries are free
  // coordinates, the rest are residues modulo the matching torsion divisor
  std::vector<std::vector<mpz_class>> coords;
};
QuotientStructure quotient_structure(const std::vector<std::vector<mpz_class>>& n,
                                     int m);

}  // namespace dpz

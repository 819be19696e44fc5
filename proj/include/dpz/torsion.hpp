#pragma once
// Solvability of collinearity/tangency constraint systems in the
// multiplicative or additive group of a singular cubic's smooth locus, over
// an algebraically closed field of given characteristic.

#include "dpz/lattice.hpp"

#include <map>
#include <optional>

namespace dpz {

enum class TorsionMode { Gm, Ga };

struct TorsionSystem {
  int m = 0;                                     // number of point variables
  std::vector<std::string> vars;                 // labels, for reporting
  std::vector<std::vector<mpz_class>> relations; // rows of N
  struct NonzeroVec {
    std::string label;
    std::vector<mpz_class> v;
  };
  std::vector<NonzeroVec> nonzero;
  TorsionMode mode = TorsionMode::Gm;
  Int characteristic = 0;
  std::vector<std::string> notes;  // recorded assumptions
  // optional pre-normalization data: full system before setting the origin
  std::optional<std::vector<std::vector<mpz_class>>> pre_relations;
  std::optional<int> pre_origin_var;  // index in the pre-system
  int pre_m = 0;
};

// Is w forced to vanish by the relations (mode- and characteristic-aware)?
bool forced(const TorsionSystem& s, const std::vector<mpz_class>& w);

struct Solvability {
  bool solvable = false;
  std::string witness;       // description of a witness character/vector
  std::string obstruction;   // which nonzero vector is forced, when unsolvable
};
Solvability solve_system(const TorsionSystem& s);

// Independent finite brute-force oracles (used by the test suites).
//  Gm: search characters with values in Z/N', N' a faithful finite quotient
//  Ga: search F_p^m directly (p^m bounded)
std::optional<bool> brute_force_gm_char0(const TorsionSystem& s,
                                         long long budget = 2000000);
std::optional<bool> brute_force_ga(const TorsionSystem& s,
                                   long long budget = 1000000);

// Consistency of the stored origin normalization: the normalized relation
// lattice must equal the pre-normalization lattice plus the origin vector.
bool normalization_consistent(const TorsionSystem& s);

// One Table-1 row at one characteristic.
struct RowVerdict {
  bool nodal_exists = false;     // N
  bool cuspidal_exists = false;  // C (includes C_d existence)
  std::string provenance;        // solver / alias:<base> / geometric:<note>
  std::string pattern() const {
    if (nodal_exists && cuspidal_exists) return "C,N";
    if (nodal_exists) return "N";
    if (cuspidal_exists) return "C";
    return "-";
  }
};

struct CaseEncoding {
  enum Kind { Base, Alias, Geometric } kind;
  std::string name;
  TorsionSystem system;           // Base
  std::string alias_of;           // Alias
  std::map<Int, RowVerdict> geometric_rows;  // Geometric: -1 key = generic
  std::string note;
};

struct CaseTable {
  int version = 0;
  std::vector<CaseEncoding> cases;
  const CaseEncoding* find(const std::string& name) const;
  // resolve aliases down to a base case or geometric record
  const CaseEncoding& resolve(const std::string& name, std::string* chain) const;
};

CaseTable load_case_table(const std::string& path);
CaseTable builtin_case_table();  // loads from the shipped data directory

RowVerdict row_verdict(const CaseTable& table, const std::string& row, Int chr);
// rows in Table-1 order; chars e.g. {0,2,3,5,7}
struct Table1 {
  std::vector<std::string> rows;
  std::vector<Int> chars;
  std::map<std::string, std::map<Int, RowVerdict>> verdicts;
  std::string to_json() const;
  std::string to_markdown() const;
};
Table1 table1(const CaseTable& table, const std::vector<Int>& chars,
              const std::vector<std::string>& rows = {});

}  // namespace dpz

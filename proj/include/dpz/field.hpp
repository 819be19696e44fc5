#pragma once
// Exact arithmetic substrate: Q, prime fields, small extension fields, and
// multivariate rational-function fields over Q or F_p. All values are
// immutable after canonicalization.

#include "dpz/mpoly.hpp"
#include "dpz/numkit.hpp"

#include <array>
#include <memory>
#include <optional>

namespace dpz {

enum class FieldKind { Rationals, Prime, Ext, RationalFunctions };

struct Field;
using FieldPtr = std::shared_ptr<const Field>;

struct Field : std::enable_shared_from_this<Field> {
  FieldKind kind = FieldKind::Rationals;
  Int p = 0;                  // characteristic (Prime/Ext); 0 for Q
  int deg = 1;                // extension degree
  std::vector<Int> modulus;   // monic, coefficients c0..c_deg with c_deg = 1
  std::string gen = "g";      // printed name of the extension generator
  FieldPtr base;              // RationalFunctions: Q or F_p
  std::vector<std::string> vars;

  static FieldPtr rationals();
  static FieldPtr prime(Int p);
  static FieldPtr ext(Int p, const std::vector<Int>& modulus, const std::string& gen);
  static FieldPtr rational_functions(const FieldPtr& base,
                                     const std::vector<std::string>& vars);
  // Grammar: Q | F2 | F3 | F4 | F8 | F9 | F25 | Fp:<p> | Fq:<p>^<k>:<c0,..,ck>
  //        | RF:<base>:<v1,v2,...>
  static FieldPtr parse(const std::string& spec);

  Int characteristic() const {
    if (kind == FieldKind::Rationals) return 0;
    if (kind == FieldKind::RationalFunctions) return base->characteristic();
    return p;
  }
  bool finite() const { return kind == FieldKind::Prime || kind == FieldKind::Ext; }
  Int order() const;  // p^deg, finite fields only
  std::string describe() const;
  bool same(const Field& o) const;
};

// A field value. Exactly one payload member is active, per descriptor kind.
struct FV {
  FieldPtr f;
  mpq_class q;            // Rationals
  Int r = 0;              // Prime
  std::vector<Int> e;     // Ext, coefficients of 1, g, g^2, ...
  std::shared_ptr<const MFrac> rf;  // RationalFunctions

  FV() = default;
  static FV zero(const FieldPtr& f);
  static FV one(const FieldPtr& f);
  static FV of_int(const FieldPtr& f, Int n);
  static FV of_q(const FieldPtr& f, const mpq_class& v);
  static FV of_residue(const FieldPtr& f, Int n);
  static FV of_ext(const FieldPtr& f, std::vector<Int> coeffs);
  static FV of_frac(const FieldPtr& f, const MFrac& fr);
  // parse through the polynomial grammar using the field's symbol names
  static FV parse(const FieldPtr& f, const std::string& text);

  bool is_zero() const;
  bool operator==(const FV& o) const;
  bool operator!=(const FV& o) const { return !(*this == o); }
  std::string str() const;
};

FV operator+(const FV& a, const FV& b);
FV operator-(const FV& a, const FV& b);
FV operator*(const FV& a, const FV& b);
FV operator/(const FV& a, const FV& b);
FV operator-(const FV& a);
FV fv_inv(const FV& a);
FV fv_pow(const FV& a, long long e);

// Unique p^r-th root in a perfect finite field (x^(p^(k - r mod k))).
FV frobenius_root(const FV& x, int r);

// Every element of a finite field, in a fixed deterministic order.
std::vector<FV> all_elements(const FieldPtr& f);
FV random_element(const FieldPtr& f, Rng& rng);

}  // namespace dpz

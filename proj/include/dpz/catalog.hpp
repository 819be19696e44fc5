#pragma once
// Named, replayable surface constructions with expected-vs-computed
// verification reports, automorphism permutation checks, and the symbolic
// Cremona-composition check over F2(a,b).

#include "dpz/report.hpp"
#include "dpz/surface.hpp"
#include "dpz/torsion.hpp"

namespace dpz {

struct RecipeInfo {
  std::string name;
  std::string default_field;
  Int required_char = -1;  // -1: any
  std::vector<std::string> expected_type;
  int expected_rank = 0;
  long long expected_k2 = 0;
  int expected_height = 0;   // certified only up to the search bound
  int expected_boundary = 0;
  std::string expected_anticanonical;  // node | cusp | smooth
  std::string notes;
};

std::vector<RecipeInfo> catalog_recipes();
const RecipeInfo& recipe_info(const std::string& name);

struct BuiltModel {
  RecipeInfo info;
  FieldPtr field;
  SurfaceModel model;
  std::vector<std::string> boundary;
  std::string anticanonical;  // tracked label, empty if not tracked
  std::string base_cubic_shape;  // node/cusp/smooth of the base configuration
  std::vector<std::string> build_notes;
};

// field_spec empty = recipe default; param: recipe-specific extra data
// (8A1: "a,b,c"; 4A1+D4: the direction line's second point "[x:y:z]").
BuiltModel build_named(const std::string& name, const std::string& field_spec = "",
                       const std::string& param = "");

VerificationReport catalog_verify(const std::string& name,
                                  const std::string& field_spec = "",
                                  int d_max = 12, const std::string& param = "");

// Automorphism permutation checks: incidence/Gram preservation + group order
// + transitivity on the singular-component orbits.
VerificationReport aut_check(const std::string& name,
                             const std::string& field_spec = "",
                             const std::string& param = "");

// The symbolic composition over F2(a,b): delta_1, tau, delta_2, delta_3 with
// all printed intermediate images and the closing identity p' = [a:1:b].
VerificationReport sigma_j_verify();

// Char-3 cubic families: pencil members singular at the stated radical point
// and cuspidal (both the tangent-line pencil and the 8-point family).
VerificationReport cubic_pencil_check(int min_samples = 10);

// height(Y,T-resolved) = height(Y) + 2 for the cuspidal rows.
VerificationReport height_plus_two_check(const std::string& name, int d_max = 12);

// All recipes end-to-end plus the cross-module checks; `jobs` > 1 runs
// recipes concurrently.
std::vector<VerificationReport> catalog_verify_all(int d_max = 12, int jobs = 1);

}  // namespace dpz

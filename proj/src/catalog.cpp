#include "dpz/catalog.hpp"

namespace dpz {
// placeholder during bring-up
std::vector<RecipeInfo> catalog_recipes() { return {}; }
const RecipeInfo& recipe_info(const std::string& name) {
  fail("UnknownRecipe", name);
}
BuiltModel build_named(const std::string&, const std::string&, const std::string&) {
  fail("NotImplemented", "catalog");
}
VerificationReport catalog_verify(const std::string&, const std::string&, int,
                                  const std::string&) {
  fail("NotImplemented", "catalog");
}
VerificationReport aut_check(const std::string&, const std::string&,
                             const std::string&) {
  fail("NotImplemented", "catalog");
}
VerificationReport sigma_j_verify() { fail("NotImplemented", "catalog"); }
VerificationReport cubic_pencil_check(int) { fail("NotImplemented", "catalog"); }
VerificationReport height_plus_two_check(const std::string&, int) {
  fail("NotImplemented", "catalog");
}
std::vector<VerificationReport> catalog_verify_all(int, int) {
  fail("NotImplemented", "catalog");
}
}  // namespace dpz

#include "doctest.h"
#include "dpz/field.hpp"
using namespace dpz;

TEST_CASE("prime field arithmetic") {
  auto f7 = Field::parse("F7");
  FV two = FV::of_int(f7, 2);
  CHECK(fv_inv(two) == FV::of_int(f7, 4));
  CHECK((two * FV::of_int(f7, 4)) == FV::one(f7));
}

TEST_CASE("rational arithmetic") {
  auto q = Field::rationals();
  FV a = FV::parse(q, "1/2"), b = FV::parse(q, "1/3");
  CHECK((a + b) == FV::parse(q, "5/6"));
}

TEST_CASE("char-2 function field square") {
  auto rf = Field::parse("RF:F2:a,b");
  FV a = FV::parse(rf, "a"), b = FV::parse(rf, "b");
  FV s = a + b;
  CHECK((s * s) == FV::parse(rf, "a^2+b^2"));
}

TEST_CASE("frobenius roots in F4 and F8") {
  auto f4 = Field::parse("F4");
  FV w = FV::of_ext(f4, {0, 1});
  FV r = frobenius_root(w, 1);
  CHECK(fv_pow(r, 2) == w);
  CHECK(r == w * w);  // w^2 = w + 1
  auto f8 = Field::parse("F8");
  FV t = FV::of_ext(f8, {0, 1});
  FV rt = frobenius_root(t, 1);
  CHECK(fv_pow(rt, 2) == t);
  CHECK(rt == fv_pow(t, 4));
}

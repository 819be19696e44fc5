#pragma once
// Small exact-arithmetic helpers shared across the library.

#include <gmpxx.h>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpz {

using Int = long;

// Library errors carry a short machine-readable code next to the message.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

inline std::string q_str(const mpq_class& q) {
  mpq_class r(q);
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline mpq_class q_parse(const std::string& s) {
  auto slash = s.find('/');
  mpq_class q;
  if (slash == std::string::npos)
    q = mpq_class(s);
  else
    q = mpq_class(s.substr(0, slash)) / mpq_class(s.substr(slash + 1));
  q.canonicalize();
  return q;
}

inline Int mod_reduce(Int a, Int p) {
  Int r = a % p;
  return r < 0 ? r + p : r;
}

inline Int mul_mod(Int a, Int b, Int p) {
  return (Int)(((__int128)a * b) % p);
}

inline Int pow_mod(Int a, Int e, Int p) {
  Int r = 1 % p;
  a = mod_reduce(a, p);
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline Int inv_mod(Int a, Int p) {
  a = mod_reduce(a, p);
  if (a == 0) fail("DivisionByZero", "inverse of 0 mod " + std::to_string(p));
  Int t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    Int q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return mod_reduce(t, p);
}

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Deterministic RNG; every randomized check takes an explicit seed.
struct Rng {
  std::mt19937_64 g;
  explicit Rng(uint64_t seed) : g(seed) {}
  Int uniform(Int lo, Int hi) {  // inclusive
    return std::uniform_int_distribution<Int>(lo, hi)(g);
  }
};

}  // namespace dpz

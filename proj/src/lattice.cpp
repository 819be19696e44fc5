#include "dpz/lattice.hpp"

#include <sstream>

namespace dpz {

bool DivisorClass::integral() const {
  for (auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
  if (rank() != o.rank()) fail("RankMismatch", "divisor class addition");
  DivisorClass r(rank());
  for (int i = 0; i < rank(); ++i) r.v[i] = v[i] + o.v[i];
  return r;
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const {
  if (rank() != o.rank()) fail("RankMismatch", "divisor class subtraction");
  DivisorClass r(rank());
  for (int i = 0; i < rank(); ++i) r.v[i] = v[i] - o.v[i];
  return r;
}

DivisorClass DivisorClass::scaled(const mpq_class& k) const {
  DivisorClass r(rank());
  for (int i = 0; i < rank(); ++i) {
    r.v[i] = v[i] * k;
    r.v[i].canonicalize();
  }
  return r;
}

std::string DivisorClass::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < rank(); ++i) {
    if (v[i] == 0) continue;
    std::string var = i == 0 ? "H" : "e" + std::to_string(i);
    mpq_class c = v[i];
    if (first) {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << q_str(c) << "*";
      os << var;
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
      mpq_class a = abs(c);
      if (a != 1) os << q_str(a) << "*";
      os << var;
    }
  }
  if (first) os << "0";
  return os.str();
}

mpq_class pair(const DivisorClass& a, const DivisorClass& b) {
  if (a.rank() != b.rank()) fail("RankMismatch", "pairing");
  mpq_class s = a.v[0] * b.v[0];
  for (int i = 1; i < a.rank(); ++i) s -= a.v[i] * b.v[i];
  s.canonicalize();
  return s;
}

DivisorClass canonical_class(int rank) {
  DivisorClass k(rank);
  k.v[0] = -3;
  for (int i = 1; i < rank; ++i) k.v[i] = 1;
  return k;
}

namespace {

using Mat = std::vector<std::vector<mpz_class>>;

Mat identity(int n) {
  Mat m(n, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

SmithResult smith_normal_form(Mat a) {
  int r = (int)a.size();
  int m = r ? (int)a[0].size() : 0;
  SmithResult out;
  out.U = identity(r);
  out.V = identity(m);
  auto row_add = [&](int dst, int src, const mpz_class& k) {
    for (int j = 0; j < m; ++j) a[dst][j] += k * a[src][j];
    for (int j = 0; j < r; ++j) out.U[dst][j] += k * out.U[src][j];
  };
  auto col_add = [&](int dst, int src, const mpz_class& k) {
    for (int i = 0; i < r; ++i) a[i][dst] += k * a[i][src];
    for (int i = 0; i < m; ++i) out.V[i][dst] += k * out.V[i][src];
  };
  auto row_swap = [&](int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(out.U[i], out.U[j]);
  };
  auto col_swap = [&](int i, int j) {
    for (int k = 0; k < r; ++k) std::swap(a[k][i], a[k][j]);
    for (int k = 0; k < m; ++k) std::swap(out.V[k][i], out.V[k][j]);
  };
  auto row_neg = [&](int i) {
    for (int j = 0; j < m; ++j) a[i][j] = -a[i][j];
    for (int j = 0; j < r; ++j) out.U[i][j] = -out.U[i][j];
  };

  int t = 0;
  while (t < r && t < m) {
    // find a nonzero pivot in the remaining block
    int pi = -1, pj = -1;
    mpz_class best = 0;
    for (int i = t; i < r; ++i)
      for (int j = t; j < m; ++j)
        if (a[i][j] != 0 && (best == 0 || abs(a[i][j]) < best)) {
          best = abs(a[i][j]);
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < r; ++i)
        if (a[i][t] != 0) {
          mpz_class q = a[i][t] / a[t][t];
          row_add(i, t, -q);
          if (a[i][t] != 0) {
            row_swap(i, t);
            clean = false;
          }
        }
      for (int j = t + 1; j < m; ++j)
        if (a[t][j] != 0) {
          mpz_class q = a[t][j] / a[t][t];
          col_add(j, t, -q);
          if (a[t][j] != 0) {
            col_swap(j, t);
            clean = false;
          }
        }
    }
    if (a[t][t] < 0) row_neg(t);
    ++t;
  }
  // enforce the divisibility chain d_i | d_{i+1}
  for (int i = 0; i + 1 < t; ++i)
    for (int j = i + 1; j < t; ++j)
      if (a[j][j] % a[i][i] != 0) {
        // bring a[j][j] into column i and redo the block
        col_add(i, j, 1);
        bool clean = false;
        while (!clean) {
          clean = true;
          for (int k = i + 1; k < r; ++k)
            if (a[k][i] != 0) {
              mpz_class q = a[k][i] / a[i][i];
              row_add(k, i, -q);
              if (a[k][i] != 0) {
                row_swap(k, i);
                clean = false;
              }
            }
          for (int k = i + 1; k < m; ++k)
            if (a[i][k] != 0) {
              mpz_class q = a[i][k] / a[i][i];
              col_add(k, i, -q);
              if (a[i][k] != 0) {
                col_swap(k, i);
                clean = false;
              }
            }
        }
        if (a[i][i] < 0) row_neg(i);
      }
  out.D = a;
  out.rank = 0;
  for (int i = 0; i < std::min(r, m); ++i)
    if (a[i][i] != 0) {
      out.divisors.push_back(a[i][i]);
      ++out.rank;
    }
  return out;
}

namespace {

// coordinates of w in the V-basis: w' = w * V
std::vector<mpz_class> v_coords(const SmithResult& s,
                                const std::vector<mpz_class>& w) {
  int m = (int)s.V.size();
  std::vector<mpz_class> out(m, 0);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) out[j] += w[i] * s.V[i][j];
  return out;
}

}  // namespace

bool in_row_lattice(const std::vector<std::vector<mpz_class>>& n,
                    const std::vector<mpz_class>& w) {
  if (n.empty()) {
    for (auto& x : w)
      if (x != 0) return false;
    return true;
  }
  auto s = smith_normal_form(n);
  auto wp = v_coords(s, w);
  int m = (int)w.size();
  for (int i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (wp[i] % s.divisors[i] != 0) return false;
    } else if (wp[i] != 0)
      return false;
  }
  return true;
}

mpz_class order_in_quotient(const std::vector<std::vector<mpz_class>>& n,
                            const std::vector<mpz_class>& w) {
  int m = (int)w.size();
  SmithResult s;
  std::vector<mpz_class> wp;
  if (n.empty()) {
    wp = w;
    s.rank = 0;
  } else {
    s = smith_normal_form(n);
    wp = v_coords(s, w);
  }
  for (int i = s.rank; i < m; ++i)
    if (wp[i] != 0) return 0;  // infinite order
  mpz_class k = 1;
  for (int i = 0; i < s.rank; ++i) {
    mpz_class d = s.divisors[i];
    mpz_class g = gcd(d, wp[i] % d);
    mpz_class need = d / (g == 0 ? d : g);
    k = k * need / gcd(k, need);
  }
  return k;
}

bool in_row_span_mod_p(const std::vector<std::vector<mpz_class>>& n,
                       const std::vector<mpz_class>& w, Int p) {
  int m = (int)w.size();
  std::vector<std::vector<Int>> rows;
  for (auto& r : n) {
    std::vector<Int> rr(m);
    for (int j = 0; j < m; ++j) rr[j] = mod_reduce(mpz_class(r[j] % p).get_si(), p);
    rows.push_back(rr);
  }
  std::vector<Int> target(m);
  for (int j = 0; j < m; ++j) target[j] = mod_reduce(mpz_class(w[j] % p).get_si(), p);
  // eliminate
  int rank = 0;
  for (int col = 0; col < m && rank < (int)rows.size(); ++col) {
    int pr = -1;
    for (int i = rank; i < (int)rows.size(); ++i)
      if (rows[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(rows[pr], rows[rank]);
    Int inv = inv_mod(rows[rank][col], p);
    for (int j = 0; j < m; ++j) rows[rank][j] = mul_mod(rows[rank][j], inv, p);
    for (int i = 0; i < (int)rows.size(); ++i)
      if (i != rank && rows[i][col] != 0) {
        Int k = rows[i][col];
        for (int j = 0; j < m; ++j)
          rows[i][j] = mod_reduce(rows[i][j] - mul_mod(k, rows[rank][j], p), p);
      }
    if (target[col] != 0) {
      Int k = target[col];
      for (int j = 0; j < m; ++j)
        target[j] = mod_reduce(target[j] - mul_mod(k, rows[rank][j], p), p);
    }
    ++rank;
  }
  // after elimination against pivots, target must be reduced to zero by
  // remaining pivot columns; redo a full reduction to be safe
  for (int i = 0; i < rank; ++i) {
    int lead = -1;
    for (int j = 0; j < m; ++j)
      if (rows[i][j] != 0) {
        lead = j;
        break;
      }
    if (lead >= 0 && target[lead] != 0) {
      Int k = target[lead];
      for (int j = 0; j < m; ++j)
        target[j] = mod_reduce(target[j] - mul_mod(k, rows[i][j], p), p);
    }
  }
  for (Int x : target)
    if (x != 0) return false;
  return true;
}

bool in_row_span_q(const std::vector<std::vector<mpz_class>>& n,
                   const std::vector<mpz_class>& w) {
  int m = (int)w.size();
  std::vector<std::vector<mpq_class>> rows;
  for (auto& r : n) {
    std::vector<mpq_class> rr(m);
    for (int j = 0; j < m; ++j) rr[j] = r[j];
    rows.push_back(rr);
  }
  std::vector<mpq_class> target(m);
  for (int j = 0; j < m; ++j) target[j] = w[j];
  int rank = 0;
  for (int col = 0; col < m && rank < (int)rows.size(); ++col) {
    int pr = -1;
    for (int i = rank; i < (int)rows.size(); ++i)
      if (rows[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(rows[pr], rows[rank]);
    mpq_class inv = 1 / rows[rank][col];
    for (int j = 0; j < m; ++j) rows[rank][j] *= inv;
    for (int i = 0; i < (int)rows.size(); ++i)
      if (i != rank && rows[i][col] != 0) {
        mpq_class k = rows[i][col];
        for (int j = 0; j < m; ++j) rows[i][j] -= k * rows[rank][j];
      }
    if (target[col] != 0) {
      mpq_class k = target[col];
      for (int j = 0; j < m; ++j) target[j] -= k * rows[rank][j];
    }
    ++rank;
  }
  for (auto& x : target)
    if (x != 0) return false;
  return true;
}

QuotientStructure quotient_structure(const std::vector<std::vector<mpz_class>>& n,
                                     int m) {
  QuotientStructure out;
  SmithResult s;
  if (n.empty()) {
    out.free_rank = m;
    out.coords.assign(m, std::vector<mpz_class>(m, 0));
    for (int i = 0; i < m; ++i) out.coords[i][i] = 1;
    return out;
  }
  s = smith_normal_form(n);
  out.free_rank = m - s.rank;
  std::vector<int> torsion_slots;
  for (int i = 0; i < s.rank; ++i)
    if (s.divisors[i] > 1) {
      out.torsion.push_back(s.divisors[i]);
      torsion_slots.push_back(i);
    }
  for (int k = 0; k < m; ++k) {
    std::vector<mpz_class> e(m, 0);
    e[k] = 1;
    auto wp = v_coords(s, e);
    std::vector<mpz_class> coord;
    for (int i = s.rank; i < m; ++i) coord.push_back(wp[i]);  // free part
    for (size_t j = 0; j < torsion_slots.size(); ++j) {
      mpz_class d = out.torsion[j];
      mpz_class v = wp[torsion_slots[j]] % d;
      if (v < 0) v += d;
      coord.push_back(v);
    }
    out.coords.push_back(std::move(coord));
  }
  return out;
}

}  // namespace dpz

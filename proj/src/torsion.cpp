#include "dpz/torsion.hpp"

#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace dpz {

bool forced(const TorsionSystem& s, const std::vector<mpz_class>& w) {
  if ((int)w.size() != s.m) fail("RankMismatch", "forced");
  if (s.mode == TorsionMode::Ga) {
    if (s.characteristic == 0) return in_row_span_q(s.relations, w);
    return in_row_span_mod_p(s.relations, w, s.characteristic);
  }
  // Gm
  if (s.characteristic == 0) return in_row_lattice(s.relations, w);
  mpz_class k = order_in_quotient(s.relations, w);
  if (k == 0) return false;  // infinite order survives every p-power scaling
  // forced iff the order is a power of p
  mpz_class p = s.characteristic;
  while (k % p == 0) k /= p;
  return k == 1;
}

namespace {

mpz_class p_prime_part(mpz_class d, Int p) {
  if (p == 0) return d;
  while (d % p == 0) d /= p;
  return d;
}

}  // namespace

Solvability solve_system(const TorsionSystem& s) {
  Solvability out;
  if (s.mode == TorsionMode::Ga) {
    for (auto& nz : s.nonzero)
      if (forced(s, nz.v)) {
        out.obstruction = nz.label;
        return out;
      }
    out.solvable = true;
    out.witness = "generic vector avoiding " + std::to_string(s.nonzero.size()) +
                  " proper subspaces";
    return out;
  }
  // Gm: character group (k*)^s x prod mu_{d_i'}
  auto q = quotient_structure(s.relations, s.m);
  std::vector<mpz_class> tors;
  for (auto& d : q.torsion) {
    mpz_class dp = p_prime_part(d, s.characteristic);
    tors.push_back(dp);
  }
  int nfree = q.free_rank;
  int ntors = (int)tors.size();
  // coordinates of every nonzero vector in the quotient
  struct WCoord {
    std::string label;
    std::vector<mpz_class> free_part, tors_part;
    bool pure_torsion;
  };
  std::vector<WCoord> ws;
  for (auto& nz : s.nonzero) {
    WCoord wc;
    wc.label = nz.label;
    std::vector<mpz_class> coord(nfree + ntors, 0);
    // q.coords has entries for torsion slots with divisor > 1 only; align
    // by construction: coords = free part then torsion part
    std::vector<mpz_class> acc(q.coords.empty() ? 0 : q.coords[0].size(), 0);
    for (int i = 0; i < s.m; ++i)
      for (size_t j = 0; j < acc.size(); ++j) acc[j] += nz.v[i] * q.coords[i][j];
    wc.free_part.assign(acc.begin(), acc.begin() + nfree);
    wc.tors_part.assign(acc.begin() + nfree, acc.end());
    for (int j = 0; j < ntors; ++j) {
      mpz_class d = tors[j];  // values live in the p'-part
      wc.tors_part[j] %= d;
      if (wc.tors_part[j] < 0) wc.tors_part[j] += d;
    }
    bool pure = true;
    for (auto& x : wc.free_part)
      if (x != 0) pure = false;
    wc.pure_torsion = pure;
    ws.push_back(std::move(wc));
  }
  // purely torsion vectors that reduce to zero in the p'-torsion character
  // group are killed by every character
  std::vector<const WCoord*> pure;
  for (auto& wc : ws) {
    if (!wc.pure_torsion) continue;  // generic free part avoids these
    bool zero = true;
    for (auto& x : wc.tors_part)
      if (x != 0) zero = false;
    if (zero) {
      out.obstruction = wc.label;
      return out;
    }
    pure.push_back(&wc);
  }
  // brute force over the finite torsion character group
  mpz_class count = 1;
  for (auto& d : tors) count *= d;
  if (count > 1000000)
    fail("TorsionTooLarge", "torsion character group has " + count.get_str() +
                                " elements");
  mpz_class M = 1;
  for (auto& d : tors) M = M * d / gcd(M, d);
  long long total = count.get_si();
  std::vector<long long> dd;
  for (auto& d : tors) dd.push_back(d.get_si());
  long long Ml = M.get_si();
  for (long long idx = 0; idx < std::max(1LL, total); ++idx) {
    long long rest = idx;
    std::vector<long long> ci(ntors, 0);
    for (int j = 0; j < ntors; ++j) {
      ci[j] = rest % dd[j];
      rest /= dd[j];
    }
    bool ok = true;
    for (auto* wc : pure) {
      long long e = 0;
      for (int j = 0; j < ntors; ++j) {
        long long step = Ml / dd[j];
        e = (e + ci[j] * (wc->tors_part[j].get_si() % Ml) % Ml * step) % Ml;
      }
      if (e % Ml == 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.solvable = true;
      std::ostringstream os;
      os << "character (";
      for (int j = 0; j < ntors; ++j)
        os << (j ? "," : "") << ci[j] << "/" << dd[j];
      os << ") on the torsion part";
      if (nfree) os << " with a generic free part of rank " << nfree;
      out.witness = os.str();
      return out;
    }
  }
  out.obstruction = "no character separates the torsion constraints";
  return out;
}

std::optional<bool> brute_force_gm_char0(const TorsionSystem& s, long long budget) {
  auto q = quotient_structure(s.relations, s.m);
  mpz_class N = 1;
  for (auto& d : q.torsion) N = N * d / gcd(N, d);
  long long n = N.get_si();
  if (n == 0) n = 1;
  // make the free part faithful when it fits the budget
  static const long long mults[] = {420, 210, 105, 63, 21, 15, 7, 5, 3, 1};
  long long chosen = 1;
  if (q.free_rank > 0) {
    for (long long k : mults) {
      double tot = 1;
      for (int i = 0; i < s.m; ++i) tot *= (double)(n * k);
      if (tot <= (double)budget) {
        chosen = k;
        break;
      }
    }
  }
  long N2 = n * chosen;
  double tot = 1;
  for (int i = 0; i < s.m; ++i) tot *= (double)N2;
  if (tot > (double)budget) return std::nullopt;
  // search x in (Z/N2)^m with x.N = 0 and x.w != 0 for all nonzero vectors
  std::vector<long long> x(s.m, 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == s.m) {
      for (auto& r : s.relations) {
        long long acc = 0;
        for (int j = 0; j < s.m; ++j)
          acc = (acc + mpz_class(r[j] % mpz_class(N2)).get_si() * x[j]) % N2;
        if ((acc % N2 + N2) % N2 != 0) return false;
      }
      for (auto& nz : s.nonzero) {
        long long acc = 0;
        for (int j = 0; j < s.m; ++j)
          acc = (acc + mpz_class(nz.v[j] % mpz_class(N2)).get_si() * x[j]) % N2;
        if ((acc % N2 + N2) % N2 == 0) return false;
      }
      return true;
    }
    for (long long v = 0; v < N2; ++v) {
      x[i] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  if (s.m == 0) return true;  // no variables, no constraints
  return rec(0);
}

std::optional<bool> brute_force_ga(const TorsionSystem& s, long long budget) {
  Int p = s.characteristic;
  if (p == 0) return std::nullopt;
  double tot = 1;
  for (int i = 0; i < s.m; ++i) tot *= (double)p;
  if (tot > (double)budget) return std::nullopt;
  if (s.m == 0) return true;
  std::vector<Int> x(s.m, 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == s.m) {
      for (auto& r : s.relations) {
        Int acc = 0;
        for (int j = 0; j < s.m; ++j)
          acc = mod_reduce(acc + mod_reduce(mpz_class(r[j] % p).get_si(), p) * x[j], p);
        if (acc != 0) return false;
      }
      for (auto& nz : s.nonzero) {
        Int acc = 0;
        for (int j = 0; j < s.m; ++j)
          acc = mod_reduce(acc + mod_reduce(mpz_class(nz.v[j] % p).get_si(), p) * x[j], p);
        if (acc == 0) return false;
      }
      return true;
    }
    for (Int v = 0; v < p; ++v) {
      x[i] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

bool normalization_consistent(const TorsionSystem& s) {
  if (!s.pre_relations) return true;
  int pm = s.pre_m;
  int origin = *s.pre_origin_var;
  // L1 = pre-relations + e_origin, L2 = embedded normalized relations + e_origin
  std::vector<std::vector<mpz_class>> l1 = *s.pre_relations;
  std::vector<mpz_class> eo(pm, 0);
  eo[origin] = 1;
  l1.push_back(eo);
  std::vector<std::vector<mpz_class>> l2;
  for (auto& r : s.relations) {
    std::vector<mpz_class> row(pm, 0);
    int k = 0;
    for (int i = 0; i < pm; ++i) {
      if (i == origin) continue;
      row[i] = r[k++];
    }
    l2.push_back(row);
  }
  l2.push_back(eo);
  for (auto& r : l1)
    if (!in_row_lattice(l2, r)) return false;
  for (auto& r : l2)
    if (!in_row_lattice(l1, r)) return false;
  return true;
}

const CaseEncoding* CaseTable::find(const std::string& name) const {
  for (auto& c : cases)
    if (c.name == name) return &c;
  return nullptr;
}

const CaseEncoding& CaseTable::resolve(const std::string& name,
                                       std::string* chain) const {
  const CaseEncoding* c = find(name);
  if (!c) fail("UnknownRow", name);
  std::string ch = name;
  int guard = 0;
  while (c->kind == CaseEncoding::Alias) {
    if (++guard > 8) fail("UnknownRow", "alias cycle at " + name);
    ch += " -> " + c->alias_of;
    c = find(c->alias_of);
    if (!c) fail("UnknownRow", "dangling alias from " + name);
  }
  if (chain) *chain = ch;
  return *c;
}

namespace {

std::vector<mpz_class> json_vec(const nlohmann::json& j) {
  std::vector<mpz_class> v;
  for (auto& x : j) v.push_back(mpz_class((long)x.get<long long>()));
  return v;
}

}  // namespace

CaseTable load_case_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("IOError", "cannot open case table " + path);
  nlohmann::json j;
  in >> j;
  CaseTable t;
  t.version = j.at("version").get<int>();
  for (auto& b : j.at("base_cases")) {
    CaseEncoding c;
    c.kind = CaseEncoding::Base;
    c.name = b.at("name").get<std::string>();
    TorsionSystem& s = c.system;
    for (auto& v : b.at("vars")) s.vars.push_back(v.get<std::string>());
    s.m = (int)s.vars.size();
    for (auto& r : b.at("relations")) s.relations.push_back(json_vec(r));
    for (auto& [label, vec] : b.at("nonzero").items())
      s.nonzero.push_back({label, json_vec(vec)});
    if (b.contains("notes"))
      for (auto& n : b["notes"]) s.notes.push_back(n.get<std::string>());
    if (b.contains("pre_normalization")) {
      auto& pn = b["pre_normalization"];
      s.pre_m = pn.at("m").get<int>();
      s.pre_origin_var = pn.at("origin_var").get<int>();
      std::vector<std::vector<mpz_class>> rel;
      for (auto& r : pn.at("relations")) rel.push_back(json_vec(r));
      s.pre_relations = rel;
    }
    t.cases.push_back(std::move(c));
  }
  for (auto& [from, to] : j.at("aliases").items()) {
    CaseEncoding c;
    c.kind = CaseEncoding::Alias;
    c.name = from;
    c.alias_of = to.get<std::string>();
    t.cases.push_back(std::move(c));
  }
  for (auto& [name, g] : j.at("geometric").items()) {
    CaseEncoding c;
    c.kind = CaseEncoding::Geometric;
    c.name = name;
    c.note = g.value("note", "");
    for (auto& [key, val] : g.at("verdicts").items()) {
      Int chr = key == "generic" ? -1 : std::stoll(key);
      RowVerdict v;
      std::string pat = val.get<std::string>();
      v.nodal_exists = pat.find('N') != std::string::npos;
      v.cuspidal_exists = pat.find('C') != std::string::npos;
      v.provenance = "geometric:" + c.note;
      c.geometric_rows[chr] = v;
    }
    t.cases.push_back(std::move(c));
  }
  return t;
}

CaseTable builtin_case_table() {
  return load_case_table(std::string(DPZ_DATA_DIR) + "/table1_cases.json");
}

RowVerdict row_verdict(const CaseTable& table, const std::string& row, Int chr) {
  std::string chain;
  const CaseEncoding& c = table.resolve(row, &chain);
  RowVerdict v;
  if (c.kind == CaseEncoding::Geometric) {
    auto it = c.geometric_rows.find(chr);
    if (it == c.geometric_rows.end()) it = c.geometric_rows.find(-1);
    if (it == c.geometric_rows.end()) fail("UnknownRow", "no verdict for " + row);
    v = it->second;
  } else {
    TorsionSystem s = c.system;
    s.characteristic = chr;
    s.mode = TorsionMode::Gm;
    v.nodal_exists = solve_system(s).solvable;
    s.mode = TorsionMode::Ga;
    v.cuspidal_exists = solve_system(s).solvable;
    v.provenance = "solver";
  }
  if (chain != row) v.provenance += " [" + chain + "]";
  return v;
}

Table1 table1(const CaseTable& table, const std::vector<Int>& chars,
              const std::vector<std::string>& rows) {
  Table1 out;
  out.chars = chars;
  if (rows.empty()) {
    for (auto& c : table.cases) out.rows.push_back(c.name);
  } else
    out.rows = rows;
  for (auto& r : out.rows)
    for (Int chr : chars) out.verdicts[r][chr] = row_verdict(table, r, chr);
  return out;
}

std::string Table1::to_json() const {
  nlohmann::json j;
  j["chars"] = nlohmann::json::array();
  for (Int c : chars) j["chars"].push_back((long long)c);
  j["rows"] = nlohmann::json::array();
  for (auto& r : rows) {
    nlohmann::json row;
    row["type"] = r;
    for (Int c : chars) {
      auto& v = verdicts.at(r).at(c);
      row["char_" + std::to_string(c)] = v.pattern();
    }
    row["provenance"] = verdicts.at(r).at(chars.front()).provenance;
    j["rows"].push_back(row);
  }
  return j.dump(2);
}

std::string Table1::to_markdown() const {
  std::ostringstream os;
  os << "| type |";
  for (Int c : chars) os << " char " << c << " |";
  os << "\n|---|";
  for (size_t i = 0; i < chars.size(); ++i) os << "---|";
  os << "\n";
  for (auto& r : rows) {
    os << "| " << r << " |";
    for (Int c : chars) os << " " << verdicts.at(r).at(c).pattern() << " |";
    os << "\n";
  }
  return os.str();
}

}  // namespace dpz

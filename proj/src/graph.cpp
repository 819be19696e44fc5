#include "dpz/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dpz {

std::vector<std::vector<int>> WeightedForest::adjacency() const {
  std::vector<std::vector<int>> adj(n());
  for (auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

std::vector<std::vector<mpz_class>> WeightedForest::minus_intersection_matrix()
    const {
  std::vector<std::vector<mpz_class>> m(n(), std::vector<mpz_class>(n(), 0));
  for (int i = 0; i < n(); ++i) m[i][i] = -weight[i];
  for (auto& [a, b] : edges) {
    m[a][b] = -1;
    m[b][a] = -1;
  }
  return m;
}

void WeightedForest::validate() const {
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : edges) {
    if (a == b) fail("BadGraph", "self-loop");
    if (a < 0 || b < 0 || a >= n() || b >= n()) fail("BadGraph", "edge out of range");
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) fail("BadGraph", "multi-edge");
  }
  if (!allow_cycles) {
    // union-find acyclicity
    std::vector<int> parent(n());
    for (int i = 0; i < n(); ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (auto& [a, b] : edges) {
      int ra = find(a), rb = find(b);
      if (ra == rb) fail("BadGraph", "cycle in a graph not flagged allow_cycles");
      parent[ra] = rb;
    }
  }
}

WeightedForest WeightedForest::chain(const std::vector<Int>& minus_weights) {
  WeightedForest g;
  for (Int a : minus_weights) g.weight.push_back(-a);
  for (int i = 0; i + 1 < g.n(); ++i) g.edges.push_back({i, i + 1});
  return g;
}

WeightedForest WeightedForest::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  WeightedForest g;
  std::map<long long, int> index;
  for (auto& v : j.at("vertices")) {
    index[v.at("id").get<long long>()] = g.n();
    g.weight.push_back(v.at("w").get<long long>());
  }
  for (auto& e : j.at("edges"))
    g.edges.push_back({index.at(e.at(0).get<long long>()),
                       index.at(e.at(1).get<long long>())});
  if (j.contains("allow_cycles")) g.allow_cycles = j["allow_cycles"].get<bool>();
  g.validate();
  return g;
}

std::string WeightedForest::to_json(const std::vector<mpz_class>* mult) const {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (int i = 0; i < n(); ++i)
    j["vertices"].push_back({{"id", i}, {"w", (long long)weight[i]}});
  j["edges"] = nlohmann::json::array();
  for (auto& [a, b] : edges) j["edges"].push_back({a, b});
  if (mult) {
    j["mult"] = nlohmann::json::array();
    for (auto& m : *mult) j["mult"].push_back(m.get_str());
  }
  return j.dump();
}

bool chain_admissible(const Chain& t) {
  for (Int a : t)
    if (a < 2) return false;
  return true;
}

mpz_class chain_discriminant(const Chain& t) {
  // tridiagonal recurrence d_k = a_k d_{k-1} - d_{k-2}, d_0 = 1
  mpz_class prev = 0, cur = 1;
  for (Int a : t) {
    mpz_class next = a * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

mpq_class fork_delta(const Fork& f) {
  mpq_class d = 0;
  for (auto& t : f.twigs) d += mpq_class(1) / mpq_class(chain_discriminant(t));
  return d;
}

bool fork_admissible(const Fork& f) {
  if (f.b < 2) return false;
  for (auto& t : f.twigs)
    if (t.empty() || !chain_admissible(t)) return false;
  return fork_delta(f) > 1;
}

static mpz_class det_minus_matrix(std::vector<std::vector<mpz_class>> m) {
  // fraction-free Bareiss
  int n = (int)m.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

mpz_class discriminant(const WeightedForest& g) {
  g.validate();
  return det_minus_matrix(g.minus_intersection_matrix());
}

bool is_negative_definite(const WeightedForest& g) {
  g.validate();
  auto m = g.minus_intersection_matrix();
  // Sylvester: all leading principal minors of -M positive
  for (int k = 1; k <= g.n(); ++k) {
    std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[i][j] = m[i][j];
    if (det_minus_matrix(std::move(sub)) <= 0) return false;
  }
  return true;
}

std::vector<mpq_class> chain_coefficients(const Chain& t) {
  if (!chain_admissible(t)) fail("NotAdmissible", "chain " + chain_str(t));
  mpz_class d = chain_discriminant(t);
  int n = (int)t.size();
  std::vector<mpq_class> cf(n);
  for (int j = 0; j < n; ++j) {
    Chain lo(t.begin(), t.begin() + j);
    Chain hi(t.begin() + j + 1, t.end());
    cf[j] = 1 - mpq_class(chain_discriminant(lo) + chain_discriminant(hi)) /
                    mpq_class(d);
    cf[j].canonicalize();
  }
  return cf;
}

ForkCoefficients fork_coefficients(const Fork& f) {
  if (!fork_admissible(f)) fail("NotAdmissible", "fork is not admissible");
  ForkCoefficients out;
  out.delta = fork_delta(f);
  mpq_class e = 0;
  for (auto& t : f.twigs) {
    Chain head(t.begin(), t.end() - 1);  // t minus the component meeting B
    e += mpq_class(chain_discriminant(head)) / mpq_class(chain_discriminant(t));
  }
  out.e = e;
  out.branch = 1 - (out.delta - 1) / (mpq_class(f.b) - e);
  out.branch.canonicalize();
  for (int i = 0; i < 3; ++i) {
    const Chain& t = f.twigs[i];
    mpz_class d = chain_discriminant(t);
    // twig ordered with the last component meeting B
    for (int j = 0; j < (int)t.size(); ++j) {
      Chain lo(t.begin(), t.begin() + j);
      Chain hi(t.begin() + j + 1, t.end());
      mpq_class cf = 1 - ((1 - out.branch) * chain_discriminant(lo) +
                          mpq_class(chain_discriminant(hi))) /
                             mpq_class(d);
      cf.canonicalize();
      out.twigs[i].push_back(cf);
    }
  }
  return out;
}

std::vector<mpq_class> twig_coefficients(const Chain& t) {
  if (!chain_admissible(t) || t.empty())
    fail("NotAdmissible", "twig " + chain_str(t));
  mpz_class d = chain_discriminant(t);
  std::vector<mpq_class> cf;
  for (int j = 0; j < (int)t.size(); ++j) {
    Chain hi(t.begin() + j + 1, t.end());
    mpq_class v = 1 - mpq_class(chain_discriminant(hi)) / mpq_class(d);
    v.canonicalize();
    cf.push_back(v);
  }
  return cf;
}

PlatonicInfo is_platonic(const Fork& f) {
  PlatonicInfo out;
  std::array<mpz_class, 3> d;
  for (int i = 0; i < 3; ++i) {
    if (!chain_admissible(f.twigs[i]) || f.twigs[i].empty()) return out;
    d[i] = chain_discriminant(f.twigs[i]);
  }
  std::sort(d.begin(), d.end());
  out.discs = d;
  if (d[0] == 2 && d[1] == 2 && d[2] >= 2) {
    out.platonic = true;
    out.family = "{2,2,k}";
  } else if (d[0] == 2 && d[1] == 3 && (d[2] == 3 || d[2] == 4 || d[2] == 5)) {
    out.platonic = true;
    out.family = "{2,3," + d[2].get_str() + "}";
  }
  return out;
}

BlowdownResult blowdown_to_zero(const WeightedForest& g0) {
  BlowdownResult res;
  WeightedForest g = g0;
  g.validate();
  if (g.n() == 0) {
    res.error = "NotCorankOne";
    return res;
  }
  // connectedness
  {
    auto adj = g.adjacency();
    std::vector<int> seen(g.n(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    for (int v = 0; v < g.n(); ++v)
      if (!seen[v]) {
        res.error = "NotConnected";
        return res;
      }
  }
  // multiplicity vector: primitive positive kernel vector of M
  {
    int n = g.n();
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = g.weight[i];
    for (auto& [a, b] : g.edges) m[a][b] = m[b][a] = 1;
    // row-reduce
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < n && rank < n; ++col) {
      int p = -1;
      for (int r = rank; r < n; ++r)
        if (m[r][col] != 0) {
          p = r;
          break;
        }
      if (p < 0) continue;
      std::swap(m[p], m[rank]);
      mpq_class inv = 1 / m[rank][col];
      for (int j = 0; j < n; ++j) m[rank][j] *= inv;
      for (int r = 0; r < n; ++r)
        if (r != rank && m[r][col] != 0) {
          mpq_class f2 = m[r][col];
          for (int j = 0; j < n; ++j) m[r][j] -= f2 * m[rank][j];
        }
      pivot_col.push_back(col);
      ++rank;
    }
    if (rank != n - 1) {
      res.error = "NotCorankOne";
      return res;
    }
    int free_col = 0;
    {
      std::set<int> pivots(pivot_col.begin(), pivot_col.end());
      for (int c = 0; c < n; ++c)
        if (!pivots.count(c)) free_col = c;
    }
    std::vector<mpq_class> v(n, 0);
    v[free_col] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free_col];
    mpz_class lcm = 1;
    for (auto& x : v) lcm = lcm * x.get_den() / gcd(lcm, mpz_class(x.get_den()));
    std::vector<mpz_class> w(n);
    mpz_class gcd_all = 0;
    for (int i = 0; i < n; ++i) {
      w[i] = mpq_class(v[i] * lcm).get_num();
      gcd_all = gcd(gcd_all, w[i]);
    }
    if (gcd_all != 0)
      for (auto& x : w) x /= gcd_all;
    bool all_pos = true, all_neg = true;
    for (auto& x : w) {
      if (x <= 0) all_pos = false;
      if (x >= 0) all_neg = false;
    }
    if (all_neg)
      for (auto& x : w) x = -x;
    else if (!all_pos) {
      res.error = "KernelNotPositive";
      return res;
    }
    res.mult = w;
  }
  // iterated contraction of (-1)-vertices
  std::vector<Int> w = g.weight;
  std::vector<int> label(g.n());
  for (int i = 0; i < g.n(); ++i) label[i] = i;
  std::vector<std::set<int>> adj(g.n());
  for (auto& [a, b] : g.edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<bool> alive(g.n(), true);
  int alive_count = g.n();
  while (alive_count > 1) {
    int pick = -1;
    bool branching_minus_one = false;
    for (int v = 0; v < g.n(); ++v) {
      if (!alive[v] || w[v] != -1) continue;
      if (adj[v].size() >= 3) {
        branching_minus_one = true;
        continue;
      }
      pick = v;
      break;
    }
    if (pick < 0) {
      res.error = branching_minus_one ? "BranchingMinusOne" : "NoContractible";
      return res;
    }
    std::vector<int> nb(adj[pick].begin(), adj[pick].end());
    for (int x : nb) {
      w[x] += 1;
      adj[x].erase(pick);
    }
    if (nb.size() == 2) {
      if (adj[nb[0]].count(nb[1])) {
        res.error = "NotSNC";
        return res;
      }
      adj[nb[0]].insert(nb[1]);
      adj[nb[1]].insert(nb[0]);
    }
    std::ostringstream os;
    os << "contract v" << label[pick];
    res.trace.push_back(os.str());
    alive[pick] = false;
    adj[pick].clear();
    --alive_count;
  }
  for (int v = 0; v < g.n(); ++v)
    if (alive[v]) {
      if (w[v] == 0) {
        res.ok = true;
        res.trace.push_back("terminal 0-curve v" + std::to_string(label[v]));
      } else
        res.error = "TerminalWeight" + std::to_string(w[v]);
    }
  return res;
}

Chain adjoint_chain(const Chain& t) {
  if (!chain_admissible(t) || t.empty()) fail("NotAdmissible", chain_str(t));
  // Build [L,1,R] from [2,1,2] by blowups that either increment the inner
  // entry of L (prepending 2 to R) or extend L by an inner 2 (incrementing
  // the inner entry of R), until L equals t read outer-to-inner.
  Chain L = {2};
  std::vector<Int> R = {2};  // R[0] adjacent to the (-1)-curve
  size_t i = 0;
  for (;;) {
    while (L[i] < t[i]) {
      L[i] += 1;
      R.insert(R.begin(), 2);
    }
    if (i + 1 == t.size()) break;
    L.push_back(2);
    R[0] += 1;
    ++i;
  }
  Chain adj(R.begin(), R.end());
  // certify with the blowdown oracle
  std::vector<Int> fiber;
  for (Int a : t) fiber.push_back(a);
  fiber.push_back(1);
  for (Int a : adj) fiber.push_back(a);
  auto check = blowdown_to_zero(WeightedForest::chain(fiber));
  if (!check.ok || chain_discriminant(adj) != chain_discriminant(t)) {
    // authoritative fallback: bounded search over blowup sequences
    struct State {
      Chain L;
      std::vector<Int> R;
    };
    std::vector<State> frontier = {{{2}, {2}}};
    int target_len = (int)t.size();
    mpz_class dt = chain_discriminant(t);
    for (int depth = 0; depth < 4096 && !frontier.empty(); ++depth) {
      std::vector<State> next;
      for (auto& st : frontier) {
        if (st.L == t) {
          Chain cand(st.R.begin(), st.R.end());
          std::vector<Int> fib(t.begin(), t.end());
          fib.push_back(1);
          for (Int a : cand) fib.push_back(a);
          auto c2 = blowdown_to_zero(WeightedForest::chain(fib));
          if (c2.ok && chain_discriminant(cand) == dt) return cand;
        }
        // L-move
        State a = st;
        a.L.back() += 1;
        a.R.insert(a.R.begin(), 2);
        if ((int)a.L.size() <= target_len && a.L.back() <= t[a.L.size() - 1])
          next.push_back(a);
        // R-move
        State b = st;
        b.L.push_back(2);
        b.R[0] += 1;
        if ((int)b.L.size() <= target_len) next.push_back(b);
      }
      frontier = std::move(next);
    }
    fail("AdjointNotFound", "no certified adjoint for " + chain_str(t));
  }
  return adj;
}

std::vector<FiberShape> enumerate_canonical_fibers(int max_vertices) {
  if (max_vertices > 16) fail("BoundTooLarge", "max_vertices must be <= 16");
  std::vector<FiberShape> out;
  // [1,(2)_k,1]
  for (int k = 0; k + 2 <= max_vertices; ++k) {
    FiberShape s;
    std::vector<Int> ws;
    ws.push_back(1);
    for (int i = 0; i < k; ++i) ws.push_back(2);
    ws.push_back(1);
    s.graph = WeightedForest::chain(ws);
    s.mult.assign(k + 2, 1);
    s.minus_one_positions = {0, k + 1};
    s.tag = "[1,(2)_" + std::to_string(k) + ",1]";
    out.push_back(std::move(s));
  }
  // [2,1,2]
  if (max_vertices >= 3) {
    FiberShape s;
    s.graph = WeightedForest::chain({2, 1, 2});
    s.mult = {1, 2, 1};
    s.minus_one_positions = {1};
    s.tag = "[2,1,2]";
    out.push_back(std::move(s));
  }
  // <2;[1,(2)_k],[2],[2]>
  for (int k = 0; k + 4 <= max_vertices; ++k) {
    FiberShape s;
    WeightedForest g;
    // vertices: 0 = branch (-2), 1 = tip (-2), 2 = tip (-2),
    // 3..3+k = the [ (2)_k,1 ] twig read from the branch
    g.weight = {-2, -2, -2};
    g.edges = {{0, 1}, {0, 2}};
    int prev = 0;
    for (int i = 0; i <= k; ++i) {
      g.weight.push_back(i == k ? -1 : -2);
      g.edges.push_back({prev, (int)g.weight.size() - 1});
      prev = (int)g.weight.size() - 1;
    }
    s.mult.assign(g.n(), 2);
    s.mult[1] = 1;
    s.mult[2] = 1;
    s.graph = g;
    s.minus_one_positions = {g.n() - 1};
    s.tag = "<2;[1,(2)_" + std::to_string(k) + "],[2],[2]>";
    // tips of the fork have multiplicity 1, the rest 2 (checked by oracle)
    auto chk = blowdown_to_zero(g);
    if (chk.ok) s.mult = chk.mult;
    out.push_back(std::move(s));
  }
  return out;
}

// canonical code of a weighted free tree: AHU on the centroid(s)
std::string weighted_tree_code(const WeightedForest& g) {
  int n = g.n();
  if (n == 0) return "()";
  auto adj = g.adjacency();
  // find centroid(s)
  std::vector<int> size(n, 0);
  std::function<void(int, int)> calc = [&](int v, int p) {
    size[v] = 1;
    for (int w : adj[v])
      if (w != p) {
        calc(w, v);
        size[v] += size[w];
      }
  };
  calc(0, -1);
  std::vector<int> centroids;
  std::function<void(int, int)> find_c = [&](int v, int p) {
    int biggest = n - size[v];
    for (int w : adj[v])
      if (w != p) biggest = std::max(biggest, size[w]);
    if (biggest <= n / 2) centroids.push_back(v);
    for (int w : adj[v])
      if (w != p) find_c(w, v);
  };
  find_c(0, -1);
  std::function<std::string(int, int)> code = [&](int v, int p) -> std::string {
    std::vector<std::string> kids;
    for (int w : adj[v])
      if (w != p) kids.push_back(code(w, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + std::to_string(g.weight[v]);
    for (auto& k : kids) s += k;
    return s + ")";
  };
  std::string best;
  for (int c : centroids) {
    std::string s = code(c, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

std::vector<FiberShape> brute_force_canonical_fibers(int max_vertices) {
  if (max_vertices > 11) fail("BoundTooLarge", "brute force bounded at 11 vertices");
  std::map<std::string, FiberShape> found;
  for (int n = 1; n <= max_vertices; ++n) {
    // all trees via parent arrays parent[i] in [0, i-1]
    std::vector<int> parent(n, 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        WeightedForest base;
        base.weight.assign(n, 0);
        for (int v = 1; v < n; ++v) base.edges.push_back({parent[v], v});
        // all weight assignments in {-1,-2}
        for (int mask = 0; mask < (1 << n); ++mask) {
          WeightedForest g = base;
          for (int v = 0; v < n; ++v) g.weight[v] = (mask >> v & 1) ? -1 : -2;
          auto res = blowdown_to_zero(g);
          if (!res.ok) continue;
          std::string key = weighted_tree_code(g);
          if (found.count(key)) continue;
          FiberShape s;
          s.graph = g;
          s.mult = res.mult;
          for (int v = 0; v < n; ++v)
            if (g.weight[v] == -1) s.minus_one_positions.push_back(v);
          s.tag = key;
          found.emplace(key, std::move(s));
        }
        return;
      }
      for (int p = 0; p < i; ++p) {
        parent[i] = p;
        rec(i + 1);
      }
    };
    rec(1);
  }
  std::vector<FiberShape> out;
  for (auto& [k, v] : found) out.push_back(v);
  return out;
}

AdeType ade_classify(const WeightedForest& g) {
  g.validate();
  AdeType bad;
  if (g.n() == 0) return bad;
  for (Int w : g.weight)
    if (w != -2) fail("NotMinusTwo", "ade_classify needs all weights -2");
  auto adj = g.adjacency();
  {
    std::vector<int> seen(g.n(), 0);
    std::function<int(int)> dfs = [&](int v) {
      seen[v] = 1;
      int c = 1;
      for (int w : adj[v])
        if (!seen[w]) c += dfs(w);
      return c;
    };
    if (dfs(0) != g.n()) fail("NotConnected", "ade_classify needs a connected graph");
  }
  if (!is_negative_definite(g)) return bad;
  std::vector<int> branch;
  for (int v = 0; v < g.n(); ++v)
    if (adj[v].size() >= 3) branch.push_back(v);
  if (branch.empty()) return AdeType{"A", g.n()};
  if (branch.size() > 1 || adj[branch[0]].size() > 3) return bad;  // not ND anyway
  // legs from the single branch vertex
  std::vector<int> legs;
  for (int s : adj[branch[0]]) {
    int len = 1, prev = branch[0], cur = s;
    for (;;) {
      int next = -1;
      for (int w : adj[cur])
        if (w != prev) next = w;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  if (legs[0] == 1 && legs[1] == 1) return AdeType{"D", g.n()};
  if (legs[0] == 1 && legs[1] == 2 && legs[2] >= 2 && legs[2] <= 4)
    return AdeType{"E", g.n()};
  return bad;
}

bool alexeev_compare_chains(const Chain& d, int offset, const Chain& dp) {
  if (!chain_admissible(d)) fail("NotAdmissible", "outer chain");
  if (offset < 0 || offset + (int)dp.size() > (int)d.size())
    fail("ShapeMismatch", "subchain does not fit");
  for (size_t i = 0; i < dp.size(); ++i)
    if (!(d[offset + i] >= dp[i] && dp[i] >= 2))
      fail("ShapeMismatch", "weights must satisfy C^2 <= C'^2 <= -2");
  auto cf_d = chain_coefficients(d);
  auto cf_dp = chain_coefficients(dp);
  for (size_t i = 0; i < dp.size(); ++i)
    if (cf_d[offset + i] < cf_dp[i]) return false;
  return true;
}

bool alexeev_compare_forks(const Fork& d, const Fork& dp) {
  if (!fork_admissible(d)) fail("NotAdmissible", "outer fork");
  if (d.b < dp.b || dp.b < 2) fail("ShapeMismatch", "branch weights");
  for (int i = 0; i < 3; ++i) {
    if (dp.twigs[i].size() > d.twigs[i].size()) fail("ShapeMismatch", "twig length");
    // twigs are compared from the branch inward
    for (size_t j = 0; j < dp.twigs[i].size(); ++j) {
      Int a = d.twigs[i][d.twigs[i].size() - 1 - j];
      Int b = dp.twigs[i][dp.twigs[i].size() - 1 - j];
      if (!(a >= b && b >= 2)) fail("ShapeMismatch", "twig weights");
    }
  }
  if (!fork_admissible(dp)) return false;  // the lemma says this cannot happen
  auto cd = fork_coefficients(d), cdp = fork_coefficients(dp);
  if (cd.branch < cdp.branch) return false;
  for (int i = 0; i < 3; ++i)
    for (size_t j = 0; j < dp.twigs[i].size(); ++j) {
      mpq_class a = cd.twigs[i][d.twigs[i].size() - 1 - j];
      mpq_class b = cdp.twigs[i][dp.twigs[i].size() - 1 - j];
      if (a < b) return false;
    }
  return true;
}

Chain parse_chain(const std::string& text) {
  Chain out;
  std::string body = text;
  auto l = body.find('['), r = body.rfind(']');
  if (l == std::string::npos || r == std::string::npos || r < l)
    fail("ParseError", "chain literal needs brackets: " + text);
  body = body.substr(l + 1, r - l - 1);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  return out;
}

Fork parse_fork(const std::string& text) {
  auto l = text.find('<'), r = text.rfind('>');
  if (l == std::string::npos || r == std::string::npos)
    fail("ParseError", "fork literal: <b;[..],[..],[..]>");
  std::string body = text.substr(l + 1, r - l - 1);
  auto semi = body.find(';');
  if (semi == std::string::npos) fail("ParseError", "fork literal needs ';'");
  Fork f;
  f.b = std::stoll(body.substr(0, semi));
  std::string rest = body.substr(semi + 1);
  int depth = 0;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : rest) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  parts.push_back(cur);
  if (parts.size() != 3) fail("ParseError", "fork needs three twigs");
  for (int i = 0; i < 3; ++i) f.twigs[i] = parse_chain(parts[i]);
  return f;
}

WeightedForest parse_fiber_chain(const std::string& text) {
  auto l = text.find('['), r = text.rfind(']');
  if (l == std::string::npos || r == std::string::npos)
    fail("ParseError", "fiber literal needs brackets");
  std::string body = text.substr(l + 1, r - l - 1);
  std::stringstream ss(body);
  std::string item;
  std::vector<Int> ws;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    bool marked = item.front() == '*';
    std::string v = item;
    v.erase(std::remove(v.begin(), v.end(), '*'), v.end());
    Int a = std::stoll(v);
    ws.push_back(marked ? 1 : a);
    if (marked && a != 1) fail("ParseError", "(-1) marker must wrap a 1");
  }
  return WeightedForest::chain(ws);
}

std::string chain_str(const Chain& t) {
  std::string s = "[";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + "]";
}

}  // namespace dpz

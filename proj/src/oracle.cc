// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bm/oracle.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace bm::oracle {

namespace {

int bits(std::uint64_t x) {
  int c = 0;
  for (; x; x >>= 1) c += x & 1u;
  return c;
}

struct Adjacency {
  int n = 0;
  std::vector<std::pair<int, int>> ends;
};

Adjacency raw(const MultiGraph& g) {
  Adjacency a;
  a.n = g.vertex_count();
  for (const Edge& e : g.edges()) a.ends.emplace_back(e.u, e.v);
  return a;
}

// Component label per vertex touched by s; -1 elsewhere.
std::vector<int> components(const Adjacency& a, std::uint64_t s) {
  std::vector<int> comp(a.n, -1);
  std::vector<std::vector<int>> nb(a.n);
  std::vector<bool> touched(a.n, false);
  for (std::size_t e = 0; e < a.ends.size(); ++e) {
    if (!((s >> e) & 1u)) continue;
    auto [u, v] = a.ends[e];
    nb[u].push_back(v);
    nb[v].push_back(u);
    touched[u] = touched[v] = true;
  }
  int next = 0;
  for (int start = 0; start < a.n; ++start) {
    if (!touched[start] || comp[start] >= 0) continue;
    std::queue<int> q;
    q.push(start);
    comp[start] = next;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : nb[x])
        if (comp[y] < 0) {
          comp[y] = next;
          q.push(y);
        }
    }
    ++next;
  }
  return comp;
}

bool linked(const Adjacency& a, std::uint64_t s, int x, int y) {
  auto comp = components(a, s);
  if (x == y) return true;
  return comp[x] >= 0 && comp[x] == comp[y];
}

}  // namespace

std::string OracleReport::line() const {
  return std::string("{\"quantity\":\"") + quantity + "\",\"engine\":\"" +
         engine + "\",\"oracle\":\"" + oracle +
         "\",\"agree\":" + (agree ? "true" : "false") + "}";
}

OracleReport compare(std::string quantity, const std::string& engine,
                     const std::string& oracle) {
  return {std::move(quantity), engine, oracle, engine == oracle};
}

bool oracle_span_member(const std::vector<EdgeSet>& basis_rows, EdgeSet v) {
  std::vector<std::uint64_t> rows(basis_rows.begin(), basis_rows.end());
  // Row echelon by highest bit.
  std::vector<std::uint64_t> ech;
  for (std::uint64_t r : rows) {
    for (std::uint64_t p : ech) {
      std::uint64_t top = std::uint64_t{1} << (63 - __builtin_clzll(p));
      if (r & top) r ^= p;
    }
    if (r) {
      ech.push_back(r);
      std::sort(ech.begin(), ech.end(), std::greater<>());
    }
  }
  std::uint64_t x = v;
  for (std::uint64_t p : ech) {
    std::uint64_t top = std::uint64_t{1} << (63 - __builtin_clzll(p));
    if (x & top) x ^= p;
  }
  return x == 0;
}

std::vector<EdgeSet> oracle_simple_cycles(const MultiGraph& g) {
  if (g.edge_count() > kOracleLimit)
    throw Error(ErrorCode::SizeExceeded, "oracle limited to 12 edges");
  Adjacency a = raw(g);
  std::uint64_t full = (std::uint64_t{1} << a.ends.size()) - 1;
  std::vector<EdgeSet> out;
  for (std::uint64_t s = 1; s <= full; ++s) {
    std::vector<int> deg(a.n, 0);
    for (std::size_t e = 0; e < a.ends.size(); ++e)
      if ((s >> e) & 1u) {
        deg[a.ends[e].first]++;
        deg[a.ends[e].second]++;
      }
    bool ok = true;
    for (int d : deg) ok = ok && (d == 0 || d == 2);
    if (!ok) continue;
    auto comp = components(a, s);
    if (*std::max_element(comp.begin(), comp.end()) == 0) out.push_back(s);
  }
  return out;
}

bool oracle_independent(const FrameMatroid& m, EdgeSet s) {
  Adjacency a = raw(m.graph());
  const auto& rows = m.biased().balance.generator_rows();
  auto comp = components(a, s);
  int ncomp = 0;
  for (int c : comp) ncomp = std::max(ncomp, c + 1);
  std::vector<int> ecount(ncomp, 0), vcount(ncomp, 0);
  for (int c : comp)
    if (c >= 0) vcount[c]++;
  for (std::size_t e = 0; e < a.ends.size(); ++e)
    if ((s >> e) & 1u) ecount[comp[a.ends[e].first]]++;
  int total = 0;
  for (int c = 0; c < ncomp; ++c) {
    int cyc = ecount[c] - vcount[c] + 1;
    if (cyc > 1) return false;
    total += cyc;
  }
  if (m.kind() == MatroidKind::Lift && total > 1) return false;
  // The cycle of a unicyclic component is its set of non-bridge edges.
  std::vector<std::uint64_t> cyc(ncomp, 0);
  for (std::size_t e = 0; e < a.ends.size(); ++e) {
    if (!((s >> e) & 1u)) continue;
    auto [u, v] = a.ends[e];
    if (linked(a, s & ~(std::uint64_t{1} << e), u, v))
      cyc[comp[u]] |= std::uint64_t{1} << e;
  }
  for (std::uint64_t c : cyc)
    if (c && oracle_span_member(rows, c)) return false;
  return true;
}

std::vector<EdgeSet> oracle_bases(const FrameMatroid& m) {
  if (m.edge_count() > kOracleLimit)
    throw Error(ErrorCode::SizeExceeded, "oracle limited to 12 edges");
  int n = m.edge_count();
  std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<bool> ind(full + 1);
  for (std::uint64_t s = 0; s <= full; ++s) ind[s] = oracle_independent(m, s);
  std::vector<EdgeSet> out;
  for (std::uint64_t s = 0; s <= full; ++s) {
    if (!ind[s]) continue;
    bool maximal = true;
    for (int e = 0; e < n && maximal; ++e)
      if (!((s >> e) & 1u) && ind[s | (std::uint64_t{1} << e)]) maximal = false;
    if (maximal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](EdgeSet x, EdgeSet y) {
    std::vector<int> a, b;
    for (int i = 0; i < 64; ++i) {
      if ((x >> i) & 1u) a.push_back(i);
      if ((y >> i) & 1u) b.push_back(i);
    }
    return a < b;
  });
  return out;
}

std::vector<EdgeSet> oracle_circuits(const FrameMatroid& m) {
  if (m.edge_count() > kOracleLimit)
    throw Error(ErrorCode::SizeExceeded, "oracle limited to 12 edges");
  int n = m.edge_count();
  std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<bool> ind(full + 1);
  for (std::uint64_t s = 0; s <= full; ++s) ind[s] = oracle_independent(m, s);
  std::vector<EdgeSet> out;
  for (std::uint64_t s = 1; s <= full; ++s) {
    if (ind[s]) continue;
    bool minimal = true;
    for (int e = 0; e < n && minimal; ++e)
      if (((s >> e) & 1u) && !ind[s & ~(std::uint64_t{1} << e)])
        minimal = false;
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](EdgeSet x, EdgeSet y) {
    std::vector<int> a, b;
    for (int i = 0; i < 64; ++i) {
      if ((x >> i) & 1u) a.push_back(i);
      if ((y >> i) & 1u) b.push_back(i);
    }
    return a < b;
  });
  return out;
}

long long matrix_tree_count(const MultiGraph& g) {
  int n = g.vertex_count();
  if (n <= 1) return 1;
  std::vector<std::vector<__int128>> lap(n, std::vector<__int128>(n, 0));
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    lap[e.u][e.u]++;
    lap[e.v][e.v]++;
    lap[e.u][e.v]--;
    lap[e.v][e.u]--;
  }
  // Bareiss elimination on the minor without the last row and column.
  int k = n - 1;
  std::vector<std::vector<__int128>> a(k, std::vector<__int128>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a[i][j] = lap[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (int p = 0; p < k; ++p) {
    if (a[p][p] == 0) {
      int q = p + 1;
      while (q < k && a[q][p] == 0) ++q;
      if (q == k) return 0;
      std::swap(a[p], a[q]);
      sign = -sign;
    }
    for (int i = p + 1; i < k; ++i)
      for (int j = p + 1; j < k; ++j)
        a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
    prev = a[p][p];
  }
  return static_cast<long long>(sign * a[k - 1][k - 1]);
}

bool oracle_connectivity(const FrameMatroid& m,
                         const std::vector<std::vector<EdgeSet>>& sequences) {
  (void)m;
  std::size_t n = sequences.size();
  if (static_cast<long>(n) > kConnectivityLimit)
    throw Error(ErrorCode::SizeExceeded, "class too large for the oracle");
  if (n <= 1) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto& s = sequences[a];
      const auto& t = sequences[b];
      if (s.size() != t.size()) continue;
      std::size_t diff[3], nd = 0;
      for (std::size_t i = 0; i < s.size() && nd < 3; ++i)
        if (s[i] != t[i]) diff[nd++] = i;
      if (nd != 2) continue;
      std::size_t i = diff[0], j = diff[1];
      std::uint64_t di = s[i] ^ t[i], dj = s[j] ^ t[j];
      if (di != dj || bits(di) != 2) continue;
      std::uint64_t e = di & s[i], f = di & t[i];
      if (bits(e) != 1 || bits(f) != 1) continue;
      if ((dj & s[j]) != f || (dj & t[j]) != e) continue;
      parent[find(a)] = find(b);
    }
  std::size_t root = find(0);
  for (std::size_t a = 1; a < n; ++a)
    if (find(a) != root) return false;
  return true;
}

}  // namespace bm::oracle

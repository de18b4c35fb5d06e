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

#include "bm/corpus.h"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace bm {
namespace {

int code(int a, int b) { return a <= b ? a * 8 + b : b * 8 + a; }

std::vector<int> mapped_codes(const std::vector<int>& codes,
                              const std::vector<int>& perm) {
  std::vector<int> out(codes.size());
  for (std::size_t k = 0; k < codes.size(); ++k)
    out[k] = code(perm[codes[k] / 8], perm[codes[k] % 8]);
  std::sort(out.begin(), out.end());
  return out;
}

bool connected_codes(int n, const std::vector<int>& codes) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int parts = n;
  for (int c : codes) {
    int a = find(c / 8), b = find(c % 8);
    if (a != b) parent[a] = b, --parts;
  }
  return parts == 1;
}

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> graph_codes(const MultiGraph& g) {
  std::vector<int> codes;
  for (const Edge& e : g.edges()) codes.push_back(code(e.u, e.v));
  return codes;
}

}  // namespace

std::vector<MultiGraph> connected_multigraphs(int n, int m) {
  if (n < 1 || n > 8) throw Error(ErrorCode::SizeExceeded, "corpus vertex bound");
  std::vector<int> types;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) types.push_back(code(a, b));
  const auto perms = all_perms(n);
  std::vector<MultiGraph> out;
  std::vector<int> pick(m, 0), codes(m);
  // Non-decreasing type sequences; keep those lexicographically least in
  // their orbit under vertex permutations.
  while (true) {
    for (int k = 0; k < m; ++k) codes[k] = types[pick[k]];
    if (connected_codes(n, codes)) {
      bool least = true;
      for (const auto& p : perms)
        if (mapped_codes(codes, p) < codes) {
          least = false;
          break;
        }
      if (least) {
        std::vector<Edge> edges;
        for (int c : codes) edges.push_back({c / 8, c % 8});
        out.emplace_back(n, std::move(edges));
      }
    }
    int k = m - 1;
    while (k >= 0 && pick[k] == static_cast<int>(types.size()) - 1) --k;
    if (k < 0) break;
    ++pick[k];
    for (int r = k + 1; r < m; ++r) pick[r] = pick[k];
  }
  return out;
}

std::vector<std::vector<int>> vertex_automorphisms(const MultiGraph& g) {
  std::vector<int> codes = graph_codes(g);
  std::sort(codes.begin(), codes.end());
  std::vector<std::vector<int>> out;
  for (const auto& p : all_perms(g.vertex_count()))
    if (mapped_codes(codes, p) == codes) out.push_back(p);
  return out;
}

std::vector<LinearClass> cycle_spanned_classes(const MultiGraph& g) {
  std::vector<SimpleCycle> cycles;
  for (SimpleCycle c : enumerate_simple_cycles(g))
    if (!(c & g.loops())) cycles.push_back(c);
  std::map<std::vector<EdgeSet>, LinearClass> seen;
  std::vector<LinearClass> frontier{LinearClass()};
  seen.emplace(std::vector<EdgeSet>{}, LinearClass());
  while (!frontier.empty()) {
    std::vector<LinearClass> next;
    for (const LinearClass& w : frontier)
      for (SimpleCycle c : cycles) {
        if (w.contains(c)) continue;
        LinearClass x = w;
        x.insert(c);
        if (seen.emplace(x.reduced_basis(), x).second) next.push_back(x);
      }
    frontier = std::move(next);
  }
  std::vector<LinearClass> out;
  for (auto& [key, w] : seen) out.push_back(w);
  std::stable_sort(out.begin(), out.end(), [](const LinearClass& a, const LinearClass& b) {
    return a.dimension() < b.dimension();
  });
  return out;
}

namespace {

struct ClassView {
  std::vector<SimpleCycle> cycles;  // loop-free simple cycles
  std::vector<bool> balanced;
  std::vector<std::uint64_t> colour;  // by edge
};

ClassView class_view(const BiasedGraph& bg) {
  const MultiGraph& g = bg.graph;
  ClassView cv;
  for (SimpleCycle c : enumerate_simple_cycles(g))
    if (!(c & g.loops())) {
      cv.cycles.push_back(c);
      cv.balanced.push_back(bg.balance.contains(c));
    }
  // Edge colours refined from the cycles through each edge.
  cv.colour.assign(g.edge_count(), 0);
  for (int round = 0; round < 3; ++round) {
    std::vector<std::vector<std::uint64_t>> seen(g.edge_count());
    for (std::size_t k = 0; k < cv.cycles.size(); ++k) {
      std::vector<std::uint64_t> d{cv.balanced[k] ? 1u : 0u};
      for_each(cv.cycles[k], [&](int e) { d.push_back(cv.colour[e]); });
      std::sort(d.begin() + 1, d.end());
      std::uint64_t h = fnv1a(d.data(), d.size() * sizeof(std::uint64_t));
      for_each(cv.cycles[k], [&](int e) { seen[e].push_back(h); });
    }
    for (int e = 0; e < g.edge_count(); ++e) {
      std::sort(seen[e].begin(), seen[e].end());
      seen[e].push_back(cv.colour[e]);
      cv.colour[e] = fnv1a(seen[e].data(), seen[e].size() * sizeof(std::uint64_t));
    }
  }
  return cv;
}

std::vector<std::uint64_t> fingerprint_of(const MultiGraph& g, int dim,
                                          const ClassView& cv,
                                          const std::vector<std::vector<int>>& autos) {
  std::vector<std::uint64_t> best;
  for (const auto& p : autos) {
    std::vector<std::vector<std::uint64_t>> desc;
    for (std::size_t k = 0; k < cv.cycles.size(); ++k) {
      std::vector<std::uint64_t> d;
      for_each(cv.cycles[k], [&](int e) {
        const Edge& ed = g.edge(e);
        d.push_back(fnv1a(&cv.colour[e], sizeof(std::uint64_t),
                          static_cast<std::uint64_t>(code(p[ed.u], p[ed.v]))));
      });
      std::sort(d.begin(), d.end());
      d.push_back(cv.balanced[k] ? 1 : 0);
      desc.push_back(std::move(d));
    }
    std::sort(desc.begin(), desc.end());
    std::vector<std::uint64_t> flat{static_cast<std::uint64_t>(dim)};
    for (const auto& d : desc) {
      flat.push_back(~std::uint64_t{0});
      flat.insert(flat.end(), d.begin(), d.end());
    }
    if (best.empty() || flat < best) best = std::move(flat);
  }
  return best;
}

// Backtracking over edge bijections that follow a vertex automorphism and
// preserve colours; each balanced cycle of a must land in b's class.  With
// equal fingerprints the balanced cycle counts agree, so an injection is a
// bijection and the image of a is b.
bool equivalent_views(const MultiGraph& g, const ClassView& a,
                      const LinearClass& b, const ClassView& bv,
                      const std::vector<std::vector<int>>& autos) {
  const int m = g.edge_count();
  std::vector<std::vector<SimpleCycle>> closing(m);
  for (std::size_t k = 0; k < a.cycles.size(); ++k)
    if (a.balanced[k]) closing[63 - std::countl_zero(a.cycles[k])].push_back(a.cycles[k]);
  std::vector<int> img(m, -1);
  EdgeSet used = 0;
  for (const auto& p : autos) {
    auto image = [&](SimpleCycle c) {
      EdgeSet x = 0;
      for_each(c, [&](int e) { x |= bit(img[e]); });
      return x;
    };
    auto rec = [&](auto&& self, int e) -> bool {
      if (e == m) return true;
      const int want = code(p[g.edge(e).u], p[g.edge(e).v]);
      for (int f = 0; f < m; ++f) {
        if (has(used, f) || code(g.edge(f).u, g.edge(f).v) != want ||
            a.colour[e] != bv.colour[f])
          continue;
        img[e] = f;
        used |= bit(f);
        bool ok = true;
        for (SimpleCycle c : closing[e])
          if (!b.contains(image(c))) {
            ok = false;
            break;
          }
        if (ok && self(self, e + 1)) return true;
        used &= ~bit(f);
      }
      return false;
    };
    if (rec(rec, 0)) return true;
  }
  return false;
}

}  // namespace

std::vector<std::uint64_t> class_fingerprint(
    const BiasedGraph& bg, const std::vector<std::vector<int>>& autos) {
  return fingerprint_of(bg.graph, bg.balance.dimension(), class_view(bg), autos);
}

bool equivalent_classes(const MultiGraph& g, const LinearClass& a,
                        const LinearClass& b,
                        const std::vector<std::vector<int>>& autos) {
  const ClassView av = class_view({g, a}), bv = class_view({g, b});
  if (fingerprint_of(g, a.dimension(), av, autos) !=
      fingerprint_of(g, b.dimension(), bv, autos))
    return false;
  return equivalent_views(g, av, b, bv, autos);
}

std::vector<CorpusEntry> generate_corpus(const CorpusBounds& b) {
  std::vector<CorpusEntry> out;
  for (int n = std::max(1, b.min_vertices); n <= b.max_vertices; ++n)
    for (int m = std::max({1, b.min_edges, n - 1}); m <= b.max_edges; ++m) {
      auto graphs = connected_multigraphs(n, m);
      for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const MultiGraph& g = graphs[gi];
        const auto autos = vertex_automorphisms(g);
        // Fingerprint buckets of kept classes; ties settled exactly.
        std::map<std::vector<std::uint64_t>, std::vector<std::pair<LinearClass, ClassView>>> kept;
        int ci = 0;
        for (LinearClass& w : cycle_spanned_classes(g)) {
          ClassView cv = class_view({g, w});
          auto& bucket = kept[fingerprint_of(g, w.dimension(), cv, autos)];
          bool dup = false;
          for (const auto& [kw, kv] : bucket)
            if (equivalent_views(g, cv, kw, kv, autos)) {
              dup = true;
              break;
            }
          if (dup) continue;
          bucket.emplace_back(w, cv);
          out.push_back({"n" + std::to_string(n) + "m" + std::to_string(m) + "g" +
                             std::to_string(gi) + "c" + std::to_string(ci++),
                         {g, std::move(w)}});
        }
      }
    }
  return out;
}

std::vector<std::size_t> sample_indices(std::size_t n, long k,
                                        std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k < 0 || static_cast<std::size_t>(k) >= n) return idx;
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace bm

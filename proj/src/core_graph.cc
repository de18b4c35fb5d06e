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

#include "bm/core_graph.h"

#include <algorithm>
#include <cstring>
#include <functional>
#include <numeric>

namespace bm {

std::vector<int> elements(EdgeSet s) {
  std::vector<int> out;
  out.reserve(size(s));
  for_each(s, [&](int i) { out.push_back(i); });
  return out;
}

EdgeSet make_set(const std::vector<int>& ids) {
  EdgeSet s = 0;
  for (int i : ids) s |= bit(i);
  return s;
}

std::string to_string(EdgeSet s) {
  std::string out = "{";
  bool first = true;
  for_each(s, [&](int i) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  });
  return out + "}";
}

bool lex_less(EdgeSet a, EdgeSet b) {
  EdgeSet d = a ^ b;
  if (!d) return false;
  int low = lowest(d);
  EdgeSet above = ~low_mask(low + 1);
  if (has(a, low)) return (b & above) != 0;
  return (a & above) == 0;
}

MultiGraph::MultiGraph(int vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ < 0 || n_ > kMaxVertices)
    throw Error(ErrorCode::SizeExceeded, "vertex count out of range");
  if (edge_count() > kMaxEdges)
    throw Error(ErrorCode::SizeExceeded, "more than 64 edges");
  inc_.assign(n_, 0);
  loop_.assign(n_, 0);
  for (int id = 0; id < edge_count(); ++id) {
    const Edge& e = edges_[id];
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_)
      throw Error(ErrorCode::InvalidGraph,
                  "edge " + std::to_string(id) + " has an endpoint out of range");
    inc_[e.u] |= bit(id);
    inc_[e.v] |= bit(id);
    if (e.loop()) {
      loop_[e.u] |= bit(id);
      loops_ |= bit(id);
    }
  }
}

VertexSet MultiGraph::vertices_of(EdgeSet s) const {
  VertexSet w = 0;
  for_each(s, [&](int e) { w |= vertices_of_edge(e); });
  return w;
}

EdgeSet MultiGraph::induced_edges(VertexSet w) const {
  EdgeSet s = 0;
  for (int id = 0; id < edge_count(); ++id)
    if ((vertices_of_edge(id) & ~w) == 0) s |= bit(id);
  return s;
}

VertexSet reach(const MultiGraph& g, EdgeSet s, int start) {
  VertexSet seen = bit(start), frontier = bit(start);
  while (frontier) {
    int x = lowest(frontier);
    frontier &= frontier - 1;
    for_each(g.incident(x) & s, [&](int e) {
      int y = g.other_end(e, x);
      if (!has(seen, y)) {
        seen |= bit(y);
        frontier |= bit(y);
      }
    });
  }
  return seen;
}

std::vector<EdgeSet> edge_components(const MultiGraph& g, EdgeSet s) {
  std::vector<EdgeSet> out;
  VertexSet left = g.vertices_of(s);
  while (left) {
    VertexSet comp = reach(g, s, lowest(left));
    left &= ~comp;
    out.push_back(g.induced_edges(comp) & s);
  }
  return out;
}

int component_count(const MultiGraph& g, EdgeSet s) {
  int c = 0;
  VertexSet left = g.all_vertices();
  while (left) {
    left &= ~reach(g, s, lowest(left));
    ++c;
  }
  return c;
}

bool is_connected(const MultiGraph& g) {
  return component_count(g, g.all_edges()) <= 1;
}

bool is_even(const MultiGraph& g, EdgeSet s) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree_in(v, s) % 2) return false;
  return true;
}

bool is_simple_cycle(const MultiGraph& g, EdgeSet s) {
  if (!s || (s & ~g.all_edges())) return false;
  VertexSet w = g.vertices_of(s);
  for_each(w, [&](int v) {
    if (g.degree_in(v, s) != 2) w = 0;
  });
  if (!w) return false;
  return reach(g, s, lowest(w)) == w;
}

EdgeSet cycle_core(const MultiGraph& g, EdgeSet s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for_each(g.vertices_of(s), [&](int v) {
      if (g.degree_in(v, s) == 1) {
        s &= ~g.incident(v);
        changed = true;
      }
    });
  }
  return s;
}

bool is_path(const MultiGraph& g, EdgeSet s) {
  if (!s || (s & g.loops())) return false;
  VertexSet w = g.vertices_of(s);
  int ends = 0;
  bool ok = true;
  for_each(w, [&](int v) {
    int d = g.degree_in(v, s);
    if (d > 2) ok = false;
    if (d == 1) ++ends;
  });
  return ok && ends == 2 && reach(g, s, lowest(w)) == w;
}

std::pair<int, int> path_ends(const MultiGraph& g, EdgeSet s) {
  int a = -1, b = -1;
  for_each(g.vertices_of(s), [&](int v) {
    if (g.degree_in(v, s) == 1) (a < 0 ? a : b) = v;
  });
  return {a, b};
}

std::vector<SimpleCycle> enumerate_simple_cycles(const MultiGraph& g) {
  return enumerate_simple_cycles(g, kCycleEnumerationLimit);
}

std::vector<SimpleCycle> enumerate_simple_cycles(const MultiGraph& g,
                                                 int edge_limit) {
  if (g.edge_count() > edge_limit)
    throw Error(ErrorCode::SizeExceeded,
                "cycle enumeration limited to " + std::to_string(edge_limit) +
                    " edges");
  std::vector<SimpleCycle> out;
  for_each(g.loops(), [&](int e) { out.push_back(bit(e)); });
  // Each non-loop cycle is found once: from its smallest edge (a,b), as a
  // path b -> a through larger edges.
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.loop()) continue;
    EdgeSet allowed = ~low_mask(e + 1) & g.all_edges() & ~g.loops();
    int target = ed.u;
    std::function<void(int, VertexSet, EdgeSet)> dfs = [&](int x,
                                                           VertexSet seen,
                                                           EdgeSet path) {
      for_each(g.incident(x) & allowed & ~path, [&](int f) {
        int y = g.other_end(f, x);
        if (y == target) {
          out.push_back(path | bit(f));
        } else if (!has(seen, y)) {
          dfs(y, seen | bit(y), path | bit(f));
        }
      });
    };
    dfs(ed.v, bit(ed.u) | bit(ed.v), bit(e));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

SpanningTree spanning_forest(const MultiGraph& g) {
  Dsu d(g.vertex_count());
  EdgeSet t = 0;
  for (int e = 0; e < g.edge_count(); ++e)
    if (d.unite(g.edge(e).u, g.edge(e).v)) t |= bit(e);
  return t;
}

std::vector<EdgeSet> cycle_space_basis(const MultiGraph& g) {
  SpanningTree t = spanning_forest(g);
  std::vector<EdgeSet> out;
  for_each(g.all_edges() & ~t,
           [&](int e) { out.push_back(fundamental_cycle(g, t, e)); });
  return out;
}

EdgeSet tree_path(const MultiGraph& g, EdgeSet t, int a, int b) {
  std::vector<int> via(g.vertex_count(), -1);
  VertexSet seen = bit(a);
  std::vector<int> queue{a};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int x = queue[q];
    for_each(g.incident(x) & t & ~g.loops(), [&](int e) {
      int y = g.other_end(e, x);
      if (!has(seen, y)) {
        seen |= bit(y);
        via[y] = e;
        queue.push_back(y);
      }
    });
  }
  if (!has(seen, b))
    throw Error(ErrorCode::DisconnectedEndpoints,
                "no tree path between " + std::to_string(a) + " and " +
                    std::to_string(b));
  EdgeSet path = 0;
  for (int x = b; x != a; x = g.other_end(via[x], x)) path |= bit(via[x]);
  return path;
}

SimpleCycle fundamental_cycle(const MultiGraph& g, const SpanningTree& t,
                              int e) {
  if (has(t, e))
    throw Error(ErrorCode::EdgeInTree, "edge " + std::to_string(e));
  const Edge& ed = g.edge(e);
  if (ed.loop()) return bit(e);
  return tree_path(g, t, ed.u, ed.v) | bit(e);
}

std::vector<SpanningTree> spanning_trees(const MultiGraph& g) {
  int target = g.vertex_count() - component_count(g, g.all_edges());
  std::vector<SpanningTree> out;
  int m = g.edge_count();
  std::function<void(int, EdgeSet, int)> rec = [&](int i, EdgeSet t,
                                                   int taken) {
    if (taken == target) {
      out.push_back(t);
      return;
    }
    if (i == m || m - i < target - taken) return;
    const Edge& ed = g.edge(i);
    if (!ed.loop() && !has(reach(g, t, ed.u), ed.v))
      rec(i + 1, t | bit(i), taken + 1);
    rec(i + 1, t, taken);
  };
  rec(0, 0, 0);
  return out;
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t graph_hash(const MultiGraph& g) {
  std::vector<std::int32_t> buf;
  buf.push_back(g.vertex_count());
  for (const Edge& e : g.edges()) {
    buf.push_back(e.u);
    buf.push_back(e.v);
  }
  return fnv1a(buf.data(), buf.size() * sizeof(std::int32_t));
}

}  // namespace bm

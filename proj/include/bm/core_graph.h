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

// Multigraphs with loops and parallel edges, edge subsets as 64-bit masks,
// and the GF(2) cycle space.

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "bm/error.h"

namespace bm {

// Bit i set iff edge i is a member.  Graphs are capped at 64 edges.
using EdgeSet = std::uint64_t;
// Bit i set iff vertex i is a member.
using VertexSet = std::uint64_t;
using SimpleCycle = EdgeSet;
using SpanningTree = EdgeSet;

constexpr int kMaxEdges = 64;
constexpr int kMaxVertices = 64;

inline EdgeSet bit(int i) { return EdgeSet{1} << i; }
inline bool has(EdgeSet s, int i) { return (s >> i) & 1u; }
inline int size(EdgeSet s) { return std::popcount(s); }
inline int lowest(EdgeSet s) { return std::countr_zero(s); }
inline EdgeSet low_mask(int n) { return n >= 64 ? ~EdgeSet{0} : bit(n) - 1; }

std::vector<int> elements(EdgeSet s);
EdgeSet make_set(const std::vector<int>& ids);
std::string to_string(EdgeSet s);

// Lexicographic order on sorted element lists; a proper prefix sorts first.
bool lex_less(EdgeSet a, EdgeSet b);

struct LexLess {
  bool operator()(EdgeSet a, EdgeSet b) const { return lex_less(a, b); }
};

// Calls f(i) for each member in increasing order.
template <class F>
inline void for_each(EdgeSet s, F&& f) {
  while (s) {
    f(lowest(s));
    s &= s - 1;
  }
}

struct Edge {
  int u = 0;
  int v = 0;
  bool loop() const { return u == v; }
  bool operator==(const Edge&) const = default;
};

class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }
  EdgeSet all_edges() const { return low_mask(edge_count()); }
  VertexSet all_vertices() const { return low_mask(n_); }

  // E_G(v): edges incident with v, each loop listed once.
  EdgeSet incident(int v) const { return inc_[v]; }
  EdgeSet loops_at(int v) const { return loop_[v]; }
  EdgeSet loops() const { return loops_; }
  // d_G(v): a loop contributes 2.
  int degree(int v) const { return size(inc_[v]) + size(loop_[v]); }
  // |E_G(v)|.
  int incident_count(int v) const { return size(inc_[v]); }
  // Degree of v in the subgraph with edge set s; loops contribute 2.
  int degree_in(int v, EdgeSet s) const {
    return size(inc_[v] & s) + size(loop_[v] & s);
  }
  int other_end(int e, int v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }
  VertexSet vertices_of(EdgeSet s) const;
  VertexSet vertices_of_edge(int e) const {
    return bit(edges_[e].u) | bit(edges_[e].v);
  }
  // Edges with both ends in w.
  EdgeSet induced_edges(VertexSet w) const;

  bool operator==(const MultiGraph& o) const {
    return n_ == o.n_ && edges_ == o.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<EdgeSet> inc_;
  std::vector<EdgeSet> loop_;
  EdgeSet loops_ = 0;
};

// Edge sets of the connected components of the subgraph (V(s), s).
std::vector<EdgeSet> edge_components(const MultiGraph& g, EdgeSet s);
// Number of components of the spanning subgraph (V(G), s).
int component_count(const MultiGraph& g, EdgeSet s);
bool is_connected(const MultiGraph& g);
// Vertices reachable from start using edges of s.
VertexSet reach(const MultiGraph& g, EdgeSet s, int start);

// Every vertex of the subgraph has even degree.
bool is_even(const MultiGraph& g, EdgeSet s);
// Connected, nonempty, and every touched vertex has degree exactly 2.
bool is_simple_cycle(const MultiGraph& g, EdgeSet s);
// Leaf peeling: removes edges at degree-1 vertices until none remain.
EdgeSet cycle_core(const MultiGraph& g, EdgeSet s);
// Connected, acyclic, every vertex of degree at most 2, nonempty, no loops.
bool is_path(const MultiGraph& g, EdgeSet s);
// Endpoints of a path (degree-1 vertices); equal when s is empty.
std::pair<int, int> path_ends(const MultiGraph& g, EdgeSet s);

constexpr int kCycleEnumerationLimit = 20;
// All simple cycles in lexicographic order; SizeExceeded beyond 20 edges.
std::vector<SimpleCycle> enumerate_simple_cycles(const MultiGraph& g);
// Same, with a caller-chosen guard.
std::vector<SimpleCycle> enumerate_simple_cycles(const MultiGraph& g,
                                                 int edge_limit);

// Greedy spanning forest in increasing edge-id order.
SpanningTree spanning_forest(const MultiGraph& g);
// Fundamental cycles of spanning_forest(g), one per non-forest edge in id
// order.
std::vector<EdgeSet> cycle_space_basis(const MultiGraph& g);
// Unique path in forest t between a and b; DisconnectedEndpoints if none.
EdgeSet tree_path(const MultiGraph& g, EdgeSet t, int a, int b);
// C_G(e, t).
SimpleCycle fundamental_cycle(const MultiGraph& g, const SpanningTree& t,
                              int e);
// All spanning trees of a connected graph (or spanning forests otherwise).
std::vector<SpanningTree> spanning_trees(const MultiGraph& g);

std::uint64_t fnv1a(const void* data, std::size_t len,
                    std::uint64_t seed = 1469598103934665603ull);
std::uint64_t graph_hash(const MultiGraph& g);

}  // namespace bm

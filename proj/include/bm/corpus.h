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

// Deterministic corpus of small biased graphs: every connected multigraph
// (loops allowed) up to isomorphism, with every linear class spanned by
// simple cycles, one per orbit under the graph's automorphisms.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bm/biased.h"

namespace bm {

struct CorpusBounds {
  int max_vertices = 5;
  int max_edges = 8;
  int min_vertices = 1;
  int min_edges = 1;
};

struct CorpusEntry {
  std::string id;  // n<vertices>m<edges>g<graph>c<class>
  BiasedGraph bg;
};

// Edges sorted by (u, v) with u <= v; one representative per isomorphism
// class, in a fixed order.
std::vector<MultiGraph> connected_multigraphs(int n, int m);

// Vertex permutations fixing the edge multiset of g.
std::vector<std::vector<int>> vertex_automorphisms(const MultiGraph& g);

// Subspaces of the loop-free cycle space spanned by their simple cycles,
// ordered by (dimension, reduced basis).
std::vector<LinearClass> cycle_spanned_classes(const MultiGraph& g);

// Invariant under the automorphisms; equal for isomorphic classes, and
// occasionally for non-isomorphic ones.
std::vector<std::uint64_t> class_fingerprint(
    const BiasedGraph& bg, const std::vector<std::vector<int>>& autos);

// Some edge bijection following an automorphism maps a onto b.
bool equivalent_classes(const MultiGraph& g, const LinearClass& a,
                        const LinearClass& b,
                        const std::vector<std::vector<int>>& autos);

std::vector<CorpusEntry> generate_corpus(const CorpusBounds& bounds);

// k distinct indices of 0..n-1 chosen by a seeded shuffle, ascending; all
// of them when k >= n or k < 0.
std::vector<std::size_t> sample_indices(std::size_t n, long k,
                                        std::uint64_t seed);

}  // namespace bm

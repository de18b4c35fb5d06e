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

// Shared graphs and generators for the unit tests.

#pragma once

#include <random>
#include <vector>

#include "bm/biased.h"

namespace bm::testing {

// Edges 0..5 = 01, 02, 03, 12, 13, 23.
inline MultiGraph k4() {
  return MultiGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

inline MultiGraph triangle() { return MultiGraph(3, {{0, 1}, {1, 2}, {0, 2}}); }

// Triangle 0,1,2 plus pendant edge p = 3 from vertex 2 to vertex 3.
inline MultiGraph triangle_pendant() {
  return MultiGraph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
}

inline MultiGraph two_loops() { return MultiGraph(1, {{0, 0}, {0, 0}}); }

inline MultiGraph parallel(int copies) {
  return MultiGraph(2, std::vector<Edge>(copies, Edge{0, 1}));
}

// Random multigraph; loops and parallel edges allowed.
inline MultiGraph random_multigraph(std::mt19937_64& rng, int n, int m,
                                    bool loops = true, bool connected = false) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<Edge> es;
  if (connected)
    for (int v = 1; v < n; ++v)
      es.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v});
  while (static_cast<int>(es.size()) < m) {
    int a = pick(rng), b = pick(rng);
    if (a == b && !loops) continue;
    es.push_back({std::min(a, b), std::max(a, b)});
  }
  std::shuffle(es.begin(), es.end(), rng);
  return MultiGraph(n, es);
}

// Random subspace generated by a few random cycles, with no balanced loop
// unless allowed.
inline BiasedGraph random_bias(std::mt19937_64& rng, const MultiGraph& g,
                               bool allow_balanced_loops = false) {
  auto cycles = enumerate_simple_cycles(g, 64);
  std::vector<SimpleCycle> gens;
  std::uniform_int_distribution<int> coin(0, 2);
  for (SimpleCycle c : cycles) {
    if (!allow_balanced_loops && (c & g.loops())) continue;
    if (coin(rng) == 0) gens.push_back(c);
  }
  LinearClass cls(gens);
  if (!allow_balanced_loops) {
    bool bad = false;
    for_each(g.loops(), [&](int e) { bad = bad || cls.contains(bit(e)); });
    if (bad) return bicircular_bias(g);
  }
  return {g, cls};
}

}  // namespace bm::testing

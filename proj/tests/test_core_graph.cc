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
#include <random>

#include "bm/oracle.h"
#include "doctest.h"
#include "fixtures.h"

using namespace bm;
using bm::testing::k4;
using bm::testing::triangle;

TEST_CASE("lexicographic order on element lists") {
  CHECK(lex_less(make_set({0, 1, 2}), make_set({0, 1, 3})));
  CHECK(lex_less(make_set({0, 1}), make_set({0, 1, 2})));
  CHECK(lex_less(make_set({0, 3}), make_set({1, 2})));
  CHECK_FALSE(lex_less(make_set({1, 2}), make_set({1, 2})));
  CHECK_FALSE(lex_less(make_set({0, 1, 2}), make_set({0, 1})));
  CHECK(lex_less(0, make_set({5})));
}

TEST_CASE("graph construction and degree measures") {
  MultiGraph g(2, {{0, 1}, {1, 1}, {0, 1}});
  CHECK(g.degree(1) == 4);
  CHECK(g.incident_count(1) == 3);
  CHECK(g.degree(0) == 2);
  CHECK(g.loops() == bit(1));
  CHECK_THROWS_AS(MultiGraph(2, {{0, 2}}), Error);
  std::vector<Edge> many(65, Edge{0, 1});
  CHECK_THROWS_AS(MultiGraph(2, many), Error);
}

TEST_CASE("simple cycles of small graphs") {
  auto tri = enumerate_simple_cycles(triangle());
  REQUIRE(tri.size() == 1);
  CHECK(tri[0] == make_set({0, 1, 2}));

  // Brute force agrees before the count is frozen.
  auto k = enumerate_simple_cycles(k4());
  auto brute = oracle::oracle_simple_cycles(k4());
  std::sort(brute.begin(), brute.end(), lex_less);
  CHECK(k == brute);
  CHECK(k.size() == 7);
  int triangles = 0;
  for (EdgeSet c : k) triangles += size(c) == 3;
  CHECK(triangles == 4);

  auto loops = enumerate_simple_cycles(bm::testing::two_loops());
  CHECK(loops == std::vector<EdgeSet>{bit(0), bit(1)});

  std::vector<Edge> big(21, Edge{0, 1});
  CHECK_THROWS_AS(enumerate_simple_cycles(MultiGraph(2, big)), Error);
}

TEST_CASE("cycle space basis") {
  MultiGraph tree(4, {{0, 1}, {1, 2}, {1, 3}});
  CHECK(cycle_space_basis(tree).empty());
  auto tri = cycle_space_basis(triangle());
  CHECK(tri == std::vector<EdgeSet>{make_set({0, 1, 2})});
  auto kb = cycle_space_basis(k4());
  CHECK(kb.size() == 3);
  for (EdgeSet c : kb) CHECK(is_simple_cycle(k4(), c));
}

TEST_CASE("fundamental cycles") {
  CHECK(fundamental_cycle(triangle(), make_set({0, 1}), 2) ==
        make_set({0, 1, 2}));
  // Star at 0 = {01,02,03}; edge 12 closes the triangle {01,02,12}.
  CHECK(fundamental_cycle(k4(), make_set({0, 1, 2}), 3) ==
        make_set({0, 1, 3}));
  MultiGraph lg(2, {{0, 1}, {1, 1}});
  CHECK(fundamental_cycle(lg, bit(0), 1) == bit(1));
  CHECK_THROWS_AS(fundamental_cycle(triangle(), make_set({0, 1}), 0), Error);
  try {
    fundamental_cycle(triangle(), bit(0), 2);
    FAIL("expected DisconnectedEndpoints");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DisconnectedEndpoints);
  }
}

TEST_CASE("spanning trees of K4") {
  auto ts = spanning_trees(k4());
  CHECK(static_cast<long long>(ts.size()) == oracle::matrix_tree_count(k4()));
  CHECK(ts.size() == 16);
}

TEST_CASE("property: cycle space and cycle enumeration") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 1 + iter % 5;
    int m = 1 + static_cast<int>(rng() % 10);
    MultiGraph g = bm::testing::random_multigraph(rng, n, m);
    auto basis = cycle_space_basis(g);
    CHECK(static_cast<int>(basis.size()) ==
          m - n + component_count(g, g.all_edges()));
    for (EdgeSet c : basis) CHECK(is_simple_cycle(g, c));
    for (EdgeSet s = 0; s <= g.all_edges(); ++s) {
      CHECK(oracle::oracle_span_member(basis, s) == is_even(g, s));
      if (s == g.all_edges()) break;
    }
    auto cycles = enumerate_simple_cycles(g);
    auto brute = oracle::oracle_simple_cycles(g);
    std::sort(brute.begin(), brute.end(), lex_less);
    CHECK(cycles == brute);
    CHECK(std::is_sorted(cycles.begin(), cycles.end(), lex_less));
    SpanningTree t = spanning_forest(g);
    for_each(g.all_edges() & ~t, [&](int e) {
      EdgeSet c = fundamental_cycle(g, t, e);
      CHECK(has(c, e));
      CHECK((c & ~bit(e) & ~t) == 0);
      CHECK(is_simple_cycle(g, c));
    });
  }
}

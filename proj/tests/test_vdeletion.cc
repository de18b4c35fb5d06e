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

#include "bm/vdeletion.h"

#include <random>

#include "bm/oracle.h"
#include "doctest.h"
#include "fixtures.h"

using namespace bm;
using bm::testing::parallel;
using bm::testing::triangle_pendant;

namespace {

// v = 0 with e1..e4 to 1..4, plus a = 23 (id 4) and b = 41 (id 5).
MultiGraph four_spokes() {
  return MultiGraph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {2, 3}, {1, 4}});
}

// Pull-back bases straight from the definition, by scanning all r-subsets.
std::vector<EdgeSet> brute_pullback(const VDeletionMap& map,
                                    const FrameMatroid& m, EdgeSet bhat) {
  std::vector<EdgeSet> out;
  EdgeSet ev = map.v_edge_set();
  EdgeSet under = 0;
  for_each(bhat, [&](int e) {
    if (map.source_edge[e] >= 0) under |= bit(map.source_edge[e]);
  });
  EdgeSet sup = 0;
  for_each(bhat & map.hat_set, [&](int e) { sup |= map.pull[e]; });
  for (EdgeSet s = 0; s < bit(m.edge_count()); ++s) {
    if (size(s) != m.rank() || !oracle::oracle_independent(m, s)) continue;
    if ((s & ~ev) != under) continue;
    bool ok = (bhat & map.hat_set) ? !((s & ev) & ~sup) : size(s & ev) == 1;
    if (ok) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace

TEST_CASE("a single edge at v leaves the rest of the graph unchanged") {
  for (auto bg : {graphic_bias(triangle_pendant()),
                  bicircular_bias(triangle_pendant())}) {
    auto map = v_delete(bg, 3);
    CHECK(map.hat_set == 0);
    CHECK(map.target.graph == MultiGraph(3, {{0, 1}, {1, 2}, {0, 2}}));
    CHECK(map.target.balance.contains(0b111) == bg.balance.contains(0b111));
    CHECK(map.source_edge == std::vector<int>{0, 1, 2});
  }
}

TEST_CASE("three parallel edges, bicircular: three unbalanced loops") {
  auto map = v_delete(bicircular_bias(parallel(3)), 1);
  CHECK(map.target.graph.vertex_count() == 1);
  CHECK(map.target.graph.loops() == 0b111);
  CHECK(map.hat_edges.size() == 3);
  CHECK(map.stem_loops == 0);
  CHECK(map.dropped_balanced_loops == 0);
  CHECK(balanced_loops(map.target) == 0);
  CHECK(map.pull[map.hat_edge(0, 1)] == 0b011);
  CHECK(map.pull[map.hat_edge(0, 2)] == 0b101);
  CHECK(map.pull[map.hat_edge(1, 2)] == 0b110);
}

TEST_CASE("three parallel edges, graphic: balanced loops are dropped") {
  auto map = v_delete(graphic_bias(parallel(3)), 1);
  CHECK(map.dropped_balanced_loops == 0b111);
  CHECK(balanced_loops(map.target) == 0);
  try {
    v_delete(graphic_bias(parallel(3)), 1, {.strict = true});
    FAIL("expected BalancedLoopPresent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BalancedLoopPresent);
  }
}

TEST_CASE("balanced loops in the source are rejected") {
  MultiGraph g(2, {{0, 1}, {1, 1}});
  BiasedGraph bg{g, LinearClass({0b10})};
  CHECK_THROWS_AS(v_delete(bg, 0), Error);
}

TEST_CASE("a loop at v paired with a non-loop gives a stem loop") {
  MultiGraph g(2, {{0, 0}, {0, 1}, {0, 1}});
  auto map = v_delete(bicircular_bias(g), 0);
  // Pairs (0,1), (0,2) are stem loops at vertex 1; (1,2) is a plain loop.
  CHECK(map.hat_edges.size() == 3);
  CHECK(size(map.stem_loops) == 2);
  CHECK(map.target.graph.loops() == 0b111);
  CHECK_THROWS_AS(petals(map, bit(map.hat_edge(0, 1))), Error);
}

TEST_CASE("loop-loop pairs get no new edge") {
  MultiGraph g(2, {{0, 0}, {0, 0}, {0, 1}});
  auto map = v_delete(bicircular_bias(g), 0);
  CHECK(map.hat_edge(0, 1) == -1);
  CHECK(map.hat_edges.size() == 2);
}

TEST_CASE("pull-back of edge sets") {
  auto map = v_delete(bicircular_bias(four_spokes()), 0);
  REQUIRE(map.hat_edges.size() == 6);
  int e12 = map.hat_edge(0, 1), e23 = map.hat_edge(1, 2);
  int e34 = map.hat_edge(2, 3), e13 = map.hat_edge(0, 2);
  int e24 = map.hat_edge(1, 3);
  CHECK(pull_back_edges(map, bit(0)) == bit(4));
  CHECK(pull_back_edges(map, bit(e12) | bit(e23)) == (bit(0) | bit(2)));
  CHECK(pull_back_edges(map, bit(e12) | bit(e34) | bit(e13) | bit(e24)) == 0);
}

TEST_CASE("petal decompositions") {
  auto map = v_delete(bicircular_bias(parallel(3)), 1);
  auto p = petals(map, bit(map.hat_edge(0, 1)));
  REQUIRE(p.size() == 1);
  CHECK(p[0] == 0b011);

  auto spokes = v_delete(bicircular_bias(four_spokes()), 0);
  int e12 = spokes.hat_edge(0, 1), e34 = spokes.hat_edge(2, 3);
  int e23 = spokes.hat_edge(1, 2);
  // One new edge and the old edge 23 close one cycle through v.
  auto one = petals(spokes, bit(e23) | bit(0));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == (bit(1) | bit(2) | bit(4)));
  // 12, 23, 34, 41 splits into 0-2-3-0 and 0-4-1-0.
  auto two = petals(spokes, bit(e12) | bit(0) | bit(e34) | bit(1));
  REQUIRE(two.size() == 2);
  CHECK(two[0] == (bit(0) | bit(3) | bit(5)));
  CHECK(two[1] == (bit(1) | bit(2) | bit(4)));

  int e13 = spokes.hat_edge(0, 2), e24 = spokes.hat_edge(1, 3);
  CHECK_THROWS_AS(petals(spokes, bit(e12) | bit(e24) | bit(e34) | bit(e13)),
                  Error);
  // Empty pull-back cycles are always balanced.
  CHECK(spokes.target.balance.contains(bit(e12) | bit(e24) | bit(e34) |
                                       bit(e13)));
}

TEST_CASE("v-deleted class is not the preimage of the source class") {
  // v = 0; e1, e2 to a = 1; e3, e4 to b = 2; g = ab.  Labels e1 = e3 = 1.
  MultiGraph g(3, {{0, 1}, {0, 1}, {0, 2}, {0, 2}, {1, 2}});
  auto bg = from_group_labelling(g, 1, {1, 0, 1, 0, 0});
  auto map = v_delete(bg, 0);
  int e14 = map.hat_edge(0, 3), e23 = map.hat_edge(1, 2);
  EdgeSet c = bit(e14) | bit(e23);
  REQUIRE(is_simple_cycle(map.target.graph, c));
  CHECK(bg.balance.contains(pull_back_edges(map, c)));
  CHECK_FALSE(map.target.balance.contains(c));
  auto p = petals(map, c);
  REQUIRE(p.size() == 2);
  CHECK_FALSE(bg.balance.contains(p[0]));
  CHECK(check_unbalanced_preservation(map).ok());
}

TEST_CASE("base-set pull-backs of small examples") {
  auto bg = bicircular_bias(parallel(3));
  FrameMatroid m(bg);
  auto map = v_delete(bg, 1);
  auto pb = base_set_pullback(map, m, bit(map.hat_edge(0, 1)));
  CHECK(pb == std::vector<EdgeSet>{0b011});
  CHECK_THROWS_AS(base_set_pullback(map, m, 0), Error);

  auto bp = bicircular_bias(triangle_pendant());
  FrameMatroid mp(bp);
  auto mapp = v_delete(bp, 3);
  for (EdgeSet bh : mapp.hat_matroid.bases()) {
    auto l = base_set_pullback(mapp, mp, bh);
    REQUIRE(l.size() == 1);
    CHECK(l[0] == (bh | bit(3)));
  }
}

TEST_CASE("cover certificates prefer the new edge of a cycle through v") {
  auto bg = bicircular_bias(parallel(3));
  FrameMatroid m(bg);
  auto map = v_delete(bg, 1);
  auto cert = cover_certificate(map, m, 0b011);
  CHECK(cert.refinement_applicable);
  CHECK(cert.refinement_honoured);
  CHECK(cert.bhat == bit(map.hat_edge(0, 1)));

  auto bp = bicircular_bias(triangle_pendant());
  FrameMatroid mp(bp);
  auto mapp = v_delete(bp, 3);
  auto c2 = cover_certificate(mapp, mp, 0b1111);
  CHECK_FALSE(c2.refinement_applicable);
  CHECK(c2.bhat == 0b111);
  CHECK_THROWS_AS(cover_certificate(mapp, mp, 0b0111), Error);
}

TEST_CASE("sequence pull-backs") {
  auto bg = bicircular_bias(parallel(3));
  FrameMatroid m(bg);
  auto map = v_delete(bg, 1);
  EdgeSet b12 = bit(map.hat_edge(0, 1)), b13 = bit(map.hat_edge(0, 2));
  auto one = sequence_pullback(map, m, {b12});
  REQUIRE(one.size() == 1);
  CHECK(one[0] == BaseSequence{0b011});
  // Both new edges use e1, so no disjoint pull-back exists.
  CHECK(is_incidental(map, {b12, b13}));
  CHECK(sequence_pullback(map, m, {b12, b13}).empty());
}

TEST_CASE("induced pull-backs") {
  // Four spokes from v = 0 around a wheel rim, both chords, a doubled rim edge.
  MultiGraph g(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4},
                   {1, 4}, {1, 3}, {2, 4}, {1, 2}});
  auto bg = bicircular_bias(g);
  FrameMatroid m(bg);
  auto map = v_delete(bg, 0);
  const auto& bs = map.hat_matroid.bases();
  int exercised = 0, fixed = 0;
  for (EdgeSet a : bs)
    for (EdgeSet b : bs)
      for (EdgeSet c : bs) {
        if (exercised >= 200 || (a & b) || (a & c) || b == c) continue;
        if (size(a & map.hat_set) > 1 || size(b & map.hat_set) > 1 ||
            size(c & map.hat_set) > 1)
          continue;
        BaseSequence s1{a, b}, s2{a, c};
        if (is_incidental(map, s1) || is_incidental(map, s2)) continue;
        auto pb = sequence_pullback(map, m, s1);
        REQUIRE_FALSE(pb.empty());
        CHECK(induced_pullback(map, m, s1, s1, pb[0]) == pb[0]);
        auto t = induced_pullback(map, m, s1, s2, pb.back());
        if (a & map.hat_set) {
          CHECK(t[0] == pb.back()[0]);
          ++fixed;
        }
        CHECK(in_base_set_pullback(map, m, c, t[1]));
        CHECK((t[0] & t[1]) == 0);
        ++exercised;
      }
  CHECK(exercised == 200);
  CHECK(fixed > 0);
}

TEST_CASE("random biased graphs: v-deletion properties at every vertex") {
  std::mt19937_64 rng(2024);
  int instances = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    int mcount = n + 1 + static_cast<int>(rng() % 3);
    auto g = bm::testing::random_multigraph(rng, n, mcount, true, true);
    auto bg = bm::testing::random_bias(rng, g);
    FrameMatroid m(bg);
    for (int v = 0; v < n; ++v) {
      auto map = v_delete(bg, v);
      ++instances;
      const MultiGraph& gh = map.target.graph;
      CHECK(gh.vertex_count() == n - 1);
      CHECK(balanced_loops(map.target) == 0);
      CHECK(check_unbalanced_preservation(map).ok());

      // Linearity of the pull-back and cycle space to cycle space.
      for (int q = 0; q < 10; ++q) {
        EdgeSet x = rng() & gh.all_edges(), y = rng() & gh.all_edges();
        CHECK(pull_back_edges(map, x ^ y) ==
              (pull_back_edges(map, x) ^ pull_back_edges(map, y)));
      }
      // Stem loops pull back to a loop plus one edge, which is not even.
      for (EdgeSet c : cycle_space_basis(gh))
        if (!(c & map.stem_loops)) CHECK(is_even(g, pull_back_edges(map, c)));

      for (SimpleCycle c : enumerate_simple_cycles(gh, 64)) {
        if (!(c & map.hat_set) || (c & map.stem_loops)) continue;
        EdgeSet pc = pull_back_edges(map, c);
        if (!pc) continue;
        EdgeSet acc = 0;
        for (SimpleCycle p : petals(map, c)) {
          CHECK((acc & p) == 0);
          acc |= p;
        }
        CHECK(acc == pc);
        auto ps = petals(map, c);
        for (std::size_t i = 0; i < ps.size(); ++i)
          for (std::size_t j = i + 1; j < ps.size(); ++j)
            CHECK((g.vertices_of(ps[i]) & g.vertices_of(ps[j])) == bit(v));
      }

      // Dropped balanced loops break pull-back existence; see below.
      if (m.edge_count() > 12 || map.dropped_balanced_loops) continue;
      for (EdgeSet bh : map.hat_matroid.bases(true)) {
        auto pb = base_set_pullback(map, m, bh);
        CHECK_FALSE(pb.empty());
        CHECK(pb == brute_pullback(map, m, bh));
      }
      for (EdgeSet b : m.bases(true)) {
        auto cert = cover_certificate(map, m, b);
        CHECK(in_base_set_pullback(map, m, cert.bhat, b));
        if (cert.refinement_applicable) CHECK(cert.refinement_honoured);
      }
    }
  }
  CHECK(instances > 100);
}

TEST_CASE("a dropped balanced loop can have an empty base-set pull-back") {
  // v = 0 with a loop, 02, and a balanced pair 01, 01; plus 12.
  MultiGraph g(3, {{0, 0}, {0, 2}, {0, 1}, {0, 1}, {1, 2}});
  BiasedGraph bg{g, LinearClass({0b01100})};
  FrameMatroid m(bg);
  auto map = v_delete(bg, 0);
  int loop34 = map.hat_edge(2, 3);
  CHECK(map.dropped_balanced_loops == bit(loop34));
  EdgeSet bhat = bit(0) | bit(loop34);
  REQUIRE(map.hat_matroid.is_base(bhat));
  CHECK(base_set_pullback(map, m, bhat).empty());
  CHECK(brute_pullback(map, m, bhat).empty());
}

TEST_CASE("non-incidental sequences can still have no pull-back") {
  MultiGraph g(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4},
                   {1, 4}, {1, 3}});
  auto bg = bicircular_bias(g);
  FrameMatroid m(bg);
  auto map = v_delete(bg, 0);
  // Old edges 12, 23, 34, 41 versus 13 with the three new edges at e1.
  EdgeSet a = 0b1111;
  EdgeSet b = bit(4) | bit(map.hat_edge(0, 1)) | bit(map.hat_edge(0, 2)) |
              bit(map.hat_edge(0, 3));
  REQUIRE(map.hat_matroid.is_base(a));
  REQUIRE(map.hat_matroid.is_base(b));
  CHECK_FALSE(is_incidental(map, {a, b}));
  // b alone pulls back onto all four edges at v, leaving none for a.
  CHECK(base_set_pullback(map, m, b).size() == 1);
  CHECK(sequence_pullback(map, m, {a, b}).empty());
}

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

#include "bm/matroid.h"

#include <random>

#include "bm/oracle.h"
#include "doctest.h"
#include "fixtures.h"

using namespace bm;
using bm::testing::k4;
using bm::testing::triangle;

namespace {

FrameMatroid graphic(const MultiGraph& g) { return FrameMatroid(graphic_bias(g)); }
FrameMatroid bicircular(const MultiGraph& g) {
  return FrameMatroid(bicircular_bias(g));
}

std::vector<EdgeSet> circuit_sets(const std::vector<Circuit>& cs) {
  std::vector<EdgeSet> out;
  for (const Circuit& c : cs) out.push_back(c.edges);
  return out;
}

}  // namespace

TEST_CASE("independence") {
  FrameMatroid bk = bicircular(k4());
  auto brute = oracle::oracle_bases(bk);
  CHECK(brute.size() == 15);
  for (EdgeSet s = 0; s < 64; ++s)
    if (size(s) == 4) CHECK(bk.is_independent(s));
  CHECK_FALSE(graphic(k4()).is_independent(make_set({0, 1, 3})));

  MultiGraph two(2, {{0, 0}, {1, 1}});
  FrameMatroid lift(bicircular_bias(two), MatroidKind::Lift);
  FrameMatroid frame(bicircular_bias(two), MatroidKind::Frame);
  CHECK_FALSE(lift.is_independent(make_set({0, 1})));
  CHECK(frame.is_independent(make_set({0, 1})));
}

TEST_CASE("bases") {
  FrameMatroid gk = graphic(k4());
  CHECK(oracle::matrix_tree_count(k4()) == 16);
  CHECK(gk.bases().size() == 16);
  CHECK(gk.bases() == oracle::oracle_bases(gk));
  FrameMatroid bk = bicircular(k4());
  CHECK(bk.bases() == oracle::oracle_bases(bk));
  CHECK(bk.bases().size() == 15);
  FrameMatroid tl = bicircular(bm::testing::two_loops());
  CHECK(tl.bases() == std::vector<EdgeSet>{bit(0), bit(1)});
  CHECK(gk.base_index(make_set({0, 1, 2})) >= 0);
  CHECK(gk.base_index(make_set({0, 1, 3})) == -1);
  std::vector<Edge> big(17, Edge{0, 1});
  CHECK_THROWS_AS(bicircular(MultiGraph(2, big)).bases(), Error);
  CHECK(bicircular(MultiGraph(2, big)).bases(true).size() == 136);
}

TEST_CASE("circuits") {
  auto tri = circuits(graphic(triangle()));
  REQUIRE(tri.size() == 1);
  CHECK(tri[0].shape == CircuitShape::BalancedCycle);
  auto tl = circuits(bicircular(bm::testing::two_loops()));
  REQUIRE(tl.size() == 1);
  CHECK(tl[0].edges == make_set({0, 1}));
  CHECK(tl[0].shape == CircuitShape::TightHandcuff);
  FrameMatroid bk = bicircular(k4());
  auto cs = circuits(bk);
  CHECK(circuit_sets(cs) == oracle::oracle_circuits(bk));
  CHECK(cs.size() == 6);
  for (const Circuit& c : cs) {
    CHECK(size(c.edges) == 5);
    CHECK(c.shape == CircuitShape::UnbalancedTheta);
  }
  CHECK_THROWS_AS(circuits(bicircular(bm::testing::parallel(13))), Error);
}

TEST_CASE("fundamental circuits and cocircuits") {
  CHECK(fundamental_circuit(graphic(triangle()), make_set({0, 1}), 2).edges ==
        make_set({0, 1, 2}));
  FrameMatroid bk = bicircular(k4());
  EdgeSet b = make_set({0, 1, 2, 3});
  Circuit c = fundamental_circuit(bk, b, 5);
  EdgeSet expect = 0;
  for (EdgeSet oc : oracle::oracle_circuits(bk))
    if (has(oc, 5) && !(oc & ~(b | bit(5)))) expect = oc;
  CHECK(c.edges == expect);
  CHECK(c.edges == make_set({0, 1, 2, 3, 5}));
  CHECK(c.shape == CircuitShape::UnbalancedTheta);
  CHECK(fundamental_circuit(graphic(k4()), make_set({0, 1, 2}), 3).edges ==
        make_set({0, 1, 3}));
  CHECK_THROWS_AS(fundamental_circuit(bk, b, 0), Error);
  CHECK_THROWS_AS(fundamental_circuit(bk, make_set({0, 1}), 5), Error);

  CHECK(fundamental_cocircuit(graphic(triangle()), make_set({0, 1}), 0) ==
        make_set({0, 2}));
  FrameMatroid tp = graphic(bm::testing::triangle_pendant());
  CHECK(fundamental_cocircuit(tp, make_set({0, 1, 3}), 3) == bit(3));
  // Path 0-1-2-3 uses 01, 12, 23; removing 12 separates {0,1} from {2,3}.
  FrameMatroid gk = graphic(k4());
  EdgeSet path = make_set({0, 3, 5});
  EdgeSet by_def = bit(3);
  for (EdgeSet base : oracle::oracle_bases(gk))
    if (size(base & path & ~bit(3)) == 2 && !has(base, 3) &&
        size(base & ~path) == 1)
      by_def |= base & ~path;
  CHECK(fundamental_cocircuit(gk, path, 3) == by_def);
  CHECK(by_def == make_set({1, 2, 3, 4}));
  CHECK_THROWS_AS(fundamental_cocircuit(gk, path, 1), Error);
}

TEST_CASE("closure") {
  CHECK(closure(bicircular(k4()), 0) == 0);
  CHECK(closure(graphic(triangle()), make_set({0, 1})) == make_set({0, 1, 2}));
  CHECK(closure(bicircular(k4()), make_set({0, 1, 3})) == make_set({0, 1, 3}));
}

TEST_CASE("symmetric exchange witnesses") {
  FrameMatroid gk = graphic(k4());
  EdgeSet star = make_set({0, 1, 2}), path = make_set({0, 3, 5});
  CHECK(symmetric_exchange_witness(gk, star, star, 1) == 1);
  int f = symmetric_exchange_witness(gk, star, path, 2);
  CHECK(gk.is_base((star & ~bit(2)) | bit(f)));
  CHECK(gk.is_base((path & ~bit(f)) | bit(2)));
  // Six edges and rank four: bicircular K4 has no disjoint base pair, so
  // every ordered pair is scanned instead.
  FrameMatroid bk = bicircular(k4());
  for (EdgeSet b1 : bk.bases())
    for (EdgeSet b2 : bk.bases())
      for_each(b1, [&](int e) {
        int g = symmetric_exchange_witness(bk, b1, b2, e);
        CHECK(bk.is_base((b1 & ~bit(e)) | bit(g)));
        CHECK(bk.is_base((b2 & ~bit(g)) | bit(e)));
      });
  CHECK_THROWS_AS(symmetric_exchange_witness(gk, star, path, 5), Error);
}

TEST_CASE("two-serial exchanges") {
  FrameMatroid tp = graphic(bm::testing::triangle_pendant());
  EdgeSet b1 = make_set({0, 1, 3}), b2 = make_set({1, 2, 3});
  auto same = two_exchange_witness(tp, b1, b1, make_set({0, 1}));
  CHECK(same.out == std::vector<int>{0, 1});
  CHECK(same.in == std::vector<int>{0, 1});
  auto x = two_exchange_witness(tp, b1, b2, make_set({0, 1}));
  CHECK(is_serial_exchange(tp, b1, b2, x));
  FrameMatroid bk = bicircular(k4());
  for (EdgeSet p : bk.bases())
    for (EdgeSet q : bk.bases()) {
      int found = 0;
      for (int a = 0; a < 6; ++a)
        for (int c = a + 1; c < 6; ++c)
          if (has(p, a) && has(p, c)) {
            auto w = two_exchange_witness(bk, p, q, bit(a) | bit(c));
            found += is_serial_exchange(bk, p, q, w);
          }
      CHECK(found == 6);
    }
  CHECK_THROWS_AS(two_exchange_witness(bicircular(bm::testing::two_loops()),
                                       bit(0), bit(1), bit(0)),
                  Error);
  auto three = serial_exchange_search(bk, make_set({0, 1, 2, 3}),
                                      make_set({2, 3, 4, 5}),
                                      make_set({0, 1, 2}));
  CHECK(three.has_value());
}

TEST_CASE("axiom self-check") {
  CHECK(check_base_axioms(graphic(k4())).ok());
  CHECK(check_base_axioms(bicircular(k4())).ok());
  FrameMatroid lift(from_group_labelling(k4(), 1, std::vector<std::uint32_t>(6, 1)),
                    MatroidKind::Lift);
  auto rep = check_base_axioms(lift);
  CHECK(rep.ok());
  CHECK(rep.base_pairs > 0);
}

TEST_CASE("property: engine agrees with the brute-force oracle") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 80; ++iter) {
    int n = 1 + iter % 5;
    MultiGraph g = bm::testing::random_multigraph(
        rng, n, 1 + static_cast<int>(rng() % 8), true, iter % 2 == 0);
    BiasedGraph bg = bm::testing::random_bias(rng, g, iter % 7 == 0);
    for (MatroidKind kind : {MatroidKind::Frame, MatroidKind::Lift}) {
      FrameMatroid m(bg, kind);
      const auto& bs = m.bases();
      REQUIRE(bs == oracle::oracle_bases(m));
      auto cs = circuits(m);
      CHECK(circuit_sets(cs) == oracle::oracle_circuits(m));
      for (const Circuit& c : cs)
        CHECK(c.shape == classify_circuit_shape(bg, c.edges));
      CHECK(check_base_axioms(m).ok());
      for (EdgeSet b : bs) {
        for_each(m.ground() & ~b, [&](int e) {
          EdgeSet c = fundamental_circuit(m, b, e).edges;
          int inside = 0;
          for (const Circuit& d : cs) inside += !(d.edges & ~(b | bit(e)));
          CHECK(inside == 1);
          for_each(c & ~bit(e),
                   [&](int f) { CHECK(m.is_base((b & ~bit(f)) | bit(e))); });
        });
        for_each(b, [&](int e) {
          EdgeSet cc = fundamental_cocircuit(m, b, e);
          for (EdgeSet other : bs) CHECK((other & cc) != 0);
          EdgeSet hyper = m.ground() & ~cc;
          CHECK(m.rank(hyper) == m.rank() - 1);
          CHECK(closure(m, hyper) == hyper);
        });
      }
      if (m.rank() >= 2 && bs.size() <= 20)
        for (EdgeSet p : bs)
          for (EdgeSet q : bs)
            for_each(p, [&](int a) {
              for_each(p & ~low_mask(a + 1), [&](int c) {
                auto w = two_exchange_witness(m, p, q, bit(a) | bit(c));
                CHECK(is_serial_exchange(m, p, q, w));
              });
            });
    }
    BiasedGraph all = graphic_bias(g);
    auto trees = spanning_trees(g);
    CHECK(FrameMatroid(all, MatroidKind::Frame).bases() == trees);
    CHECK(FrameMatroid(all, MatroidKind::Lift).bases() == trees);
  }
}

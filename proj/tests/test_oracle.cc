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

#include "doctest.h"
#include "fixtures.h"

using namespace bm;

TEST_CASE("span membership") {
  std::vector<EdgeSet> rows{make_set({0, 1, 3}), make_set({0, 2, 4})};
  CHECK(oracle::oracle_span_member(rows, 0));
  CHECK(oracle::oracle_span_member(rows, rows[0]));
  CHECK(oracle::oracle_span_member(rows, rows[0] ^ rows[1]));
  CHECK_FALSE(oracle::oracle_span_member(rows, make_set({1, 2, 5})));
}

TEST_CASE("oracle bases") {
  MultiGraph g = bm::testing::k4();
  CHECK(oracle::oracle_bases(FrameMatroid(graphic_bias(g))).size() == 16);
  CHECK(oracle::oracle_bases(FrameMatroid(bicircular_bias(g))).size() == 15);
  CHECK(oracle::oracle_bases(FrameMatroid(bicircular_bias(bm::testing::two_loops())))
            .size() == 2);
  CHECK(oracle::matrix_tree_count(g) == 16);
  CHECK(oracle::matrix_tree_count(bm::testing::parallel(3)) == 3);
}

TEST_CASE("oracle connectivity") {
  FrameMatroid m(graphic_bias(bm::testing::k4()));
  CHECK(oracle::oracle_connectivity(m, {{make_set({0, 1, 2})}}));
  // Two sequences one exchange apart, and one unrelated sequence.
  std::vector<EdgeSet> a{make_set({0, 3, 5}), make_set({1, 2, 4})};
  std::vector<EdgeSet> b{make_set({0, 2, 3}), make_set({1, 4, 5})};
  CHECK(m.is_base(b[0]));
  CHECK(m.is_base(b[1]));
  CHECK(oracle::oracle_connectivity(m, {a, b}));
  std::vector<EdgeSet> c{make_set({1, 2, 3}), make_set({0, 4, 5})};
  CHECK_FALSE(oracle::oracle_connectivity(m, {a, c}));
}

TEST_CASE("agreement report line") {
  auto r = oracle::compare("bases", "16", "16");
  CHECK(r.agree);
  CHECK(r.line() ==
        "{\"quantity\":\"bases\",\"engine\":\"16\",\"oracle\":\"16\",\"agree\":true}");
  CHECK_FALSE(oracle::compare("bases", "15", "16").agree);
}

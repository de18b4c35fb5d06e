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

// Edge duplication so that base sequences partition the edges, v-reduced
// sequences, matching graphs at v and their alignment.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bm/exchange.h"

namespace bm {

// G_kappa: each edge e of G with multiplicity w(e) > 0 in the sequences
// becomes w(e) parallel copies, listed contiguously in original edge order.
// Edges with w(e) = 0 are dropped.
struct DuplicationMap {
  BiasedGraph kappa;
  std::vector<std::vector<int>> copies;  // by original edge id
  std::vector<int> original;             // by G_kappa edge id
};

struct KappaLift {
  DuplicationMap dup;
  FrameMatroid mk;
  BaseSequence s1, s2;
};

// NotCompatible unless s1 and s2 have the same edge multiset.  The i-th base
// containing e takes the i-th copy of e.
KappaLift build_gkappa(const FrameMatroid& m, const BaseSequence& s1,
                       const BaseSequence& s2);

// Projects a G_kappa sequence back onto the original edges.
BaseSequence collapse(const DuplicationMap& dup, const BaseSequence& s);

// Smallest-index vertex of minimum degree (loops count twice).
int min_degree_vertex(const MultiGraph& g);

// Every base meets E(v) in at most two edges.
bool is_v_reduced(const MultiGraph& g, int v, const BaseSequence& s);

struct VReduceResult {
  BaseSequence out;
  ExchangeCertificate cert;
  long lemma_moves = 0;  // single exchanges found by the direct scan
  long fallbacks = 0;    // steps that needed a breadth-first search
  bool ok = false;
};

// Repeatedly trades an edge at v from a base with three or more for a
// non-v edge of a base with exactly one.  Needs the bases to partition
// E(G) and d(v) <= 2k; PreconditionViolated otherwise.
VReduceResult v_reduce(const FrameMatroid& mk, int v, const BaseSequence& s,
                       long node_limit = 1000000);

using MEdge = std::pair<int, int>;  // x_j x_k with j < k

// Vertices x_0..x_{m-1} index the edges of E(v) in id order; a loop at v is
// one vertex.  One edge per base meeting E(v) twice.
struct MatchingGraph {
  int m = 0;
  std::vector<MEdge> edges;  // sorted
  bool loop_edge = false;    // some edge pairs a loop at v
  bool operator==(const MatchingGraph& o) const {
    return m == o.m && edges == o.edges;
  }
  std::vector<int> isolated() const;
  bool has(MEdge e) const;
};

// NotVReduced if a base meets E(v) in three or more edges.
MatchingGraph matching_graph(const MultiGraph& g, int v, const BaseSequence& s);

// Non-trivial components of the symmetric difference.
struct DiffComponent {
  std::vector<int> vertices;
  int edges = 0;
  bool cycle = false;
};

struct MatchingDiff {
  int epsilon = 0;  // common edges
  long c0 = 0, c1 = 0, c2 = 0;
  std::vector<DiffComponent> components;
  bool empty() const { return components.empty(); }
  bool single_four_cycle() const;
  bool single_four_path() const;  // four edges, five vertices
};

MatchingDiff matching_diff(const MatchingGraph& a, const MatchingGraph& b);

// Matching with e, f replaced by one of their two crossings.
std::vector<MatchingGraph> crossings(const MatchingGraph& g, MEdge e, MEdge f);
// Matching with e = x_i x_j replaced by x_j x_k or x_i x_k, x_k isolated.
std::vector<MatchingGraph> singleton_moves(const MatchingGraph& g, MEdge e,
                                           int k);

enum class MatchStatus { Found, NotFound, BudgetExceeded };
const char* match_status_name(MatchStatus s);

struct MatchSearchResult {
  MatchStatus status = MatchStatus::NotFound;
  ExchangeCertificate cert;  // start -> end
  BaseSequence end;
  long explored = 0;
};

// Breadth-first search over the exchange component of s for a v-reduced
// sequence whose matching graph is one of the targets.  Intermediate
// sequences are unrestricted.
MatchSearchResult matching_search(const FrameMatroid& mk, int v,
                                  const BaseSequence& s,
                                  const std::vector<MatchingGraph>& targets,
                                  long budget = 1000000);

// e and f are B-switchable: some reachable v-reduced sequence has a
// crossing of e and f as its matching graph.
MatchSearchResult pair_switch_search(const FrameMatroid& mk, int v,
                                     const BaseSequence& s, MEdge e, MEdge f,
                                     long budget = 1000000);

// Matching graphs of every v-reduced sequence in the exchange component;
// states counts sequences up to reordering.
struct ReachableMatchings {
  std::vector<MatchingGraph> graphs;
  long states = 0;
  bool complete = true;
  std::vector<BaseSequence> members;  // sorted sequences visited, ascending
  bool contains(const MatchingGraph& g) const;
  // Some reordering of s was visited.
  bool reaches(BaseSequence s) const;
};

ReachableMatchings reachable_matchings(const FrameMatroid& mk, int v,
                                       const BaseSequence& s,
                                       long budget = 1000000);

// Non-switchable partners of each edge; at most one each is expected.
struct SwitchPartnerReport {
  long edges = 0;
  long pairs = 0;
  int max_non_switchable = 0;
  long violations = 0;
  std::string first_violation;
  bool complete = true;
  bool ok() const { return violations == 0; }
};

SwitchPartnerReport check_switch_partners(const FrameMatroid& mk, int v,
                                          const BaseSequence& s,
                                          long budget = 1000000);
// mg is the matching graph of a sequence whose reachable set is r.
SwitchPartnerReport check_switch_partners(const MatchingGraph& mg,
                                          const ReachableMatchings& r);

enum class AlignStatus { Equal, FourCycle, Other, BudgetExceeded };
const char* align_status_name(AlignStatus s);

struct AlignResult {
  AlignStatus status = AlignStatus::Other;
  BaseSequence s1, s2;
  ExchangeCertificate cert1, cert2;  // inputs -> outputs
  long greedy_moves = 0;
  bool exhaustive = false;  // the greedy phase ended elsewhere
  MatchingDiff diff;
};

// Greedy: accept any crossing or singleton move on either side that raises
// (epsilon, c2) lexicographically.  If that ends neither equal nor at a
// single 4-cycle, pairs of reachable matching graphs are scanned instead.
AlignResult align_matchings(const FrameMatroid& mk, int v,
                            const BaseSequence& s1, const BaseSequence& s2,
                            long budget = 1000000);

// Over all pairs of reachable matching graphs with (epsilon, c2) maximum,
// the difference is empty or one 4-cycle or one 4-path.
struct OptimumReport {
  bool complete = true;
  long optimal_pairs = 0;
  long violations = 0;
  std::string first_violation;
  bool ok() const { return violations == 0; }
};

OptimumReport check_matching_optimum(const FrameMatroid& mk, int v,
                                     const BaseSequence& s1,
                                     const BaseSequence& s2,
                                     long budget = 1000000);
OptimumReport check_matching_optimum(const ReachableMatchings& r1,
                                     const ReachableMatchings& r2);

}  // namespace bm

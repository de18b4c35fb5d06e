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

// Deleting a vertex v from a biased graph: every pair of edges at v becomes
// one new edge, and balance is pulled back through the pair map.

#pragma once

#include <string>
#include <vector>

#include "bm/exchange.h"

namespace bm {

// One new edge standing for the pair (e_i, e_j) of edges at v, i < j.
struct HatEdge {
  int id = -1;  // edge id in the target graph
  int i = 0, j = 0;
  bool stem_loop = false;
};

struct VDeletionMap {
  BiasedGraph source;
  int v = -1;
  BiasedGraph target;
  // e_1..e_m: source edge ids at v, ascending.  Index pairs refer here.
  std::vector<int> v_edges;
  // Target edge id -> source edge id for edges away from v; -1 on new edges.
  std::vector<int> source_edge;
  // Source vertex -> target vertex; -1 for v.
  std::vector<int> vertex_map;
  // Single-edge pull-backs, indexed by target edge id, as source edge sets.
  std::vector<EdgeSet> pull;
  std::vector<HatEdge> hat_edges;
  EdgeSet hat_set = 0;
  EdgeSet stem_loops = 0;
  // Cycles of the target accepted before completion, loops excluded.
  std::vector<SimpleCycle> generators;
  // New loops whose pull-back is a balanced 2-cycle; dropped from the class.
  EdgeSet dropped_balanced_loops = 0;
  FrameMatroid hat_matroid;

  // Target id of the edge for pair {i, j}, or -1.
  int hat_edge(int i, int j) const;
  EdgeSet v_edge_set() const { return make_set(v_edges); }
};

struct VDeleteOptions {
  bool strict = false;  // throw BalancedLoopPresent on dropped loops
  MatroidKind kind = MatroidKind::Frame;
};

constexpr int kVDeleteIncidenceLimit = 10;

VDeletionMap v_delete(const BiasedGraph& bg, int v,
                      const VDeleteOptions& opt = {});

EdgeSet pull_back_edges(const VDeletionMap& map, EdgeSet fhat);
// Union of single-edge pull-backs over the new edges of fhat.
EdgeSet pull_back_support(const VDeletionMap& map, EdgeSet fhat);
// Target edges fixed by the pull-back, mapped to source ids.
EdgeSet old_part(const VDeletionMap& map, EdgeSet fhat);

std::vector<SimpleCycle> petals(const VDeletionMap& map, SimpleCycle chat);

struct PreservationReport {
  long cycles = 0;   // simple cycles of the target examined
  long checked = 0;  // those whose pull-back is an unbalanced cycle
  long violations = 0;
  std::string first_violation;
  bool ok() const { return violations == 0; }
};

PreservationReport check_unbalanced_preservation(const BiasedGraph& bg,
                                                 int v);
PreservationReport check_unbalanced_preservation(const VDeletionMap& map);

// Lexicographically sorted; m is the matroid of map.source.
std::vector<EdgeSet> base_set_pullback(const VDeletionMap& map,
                                       const FrameMatroid& m, EdgeSet bhat);
bool in_base_set_pullback(const VDeletionMap& map, const FrameMatroid& m,
                          EdgeSet bhat, EdgeSet b);

struct CoverCertificate {
  EdgeSet bhat = 0;
  // b has a cycle through two non-loop edges e_i, e_j at v.
  bool refinement_applicable = false;
  bool refinement_honoured = false;
  int pair_i = -1, pair_j = -1;
};

CoverCertificate cover_certificate(const VDeletionMap& map,
                                   const FrameMatroid& m, EdgeSet b);

// Two new-edge sets are incidental when their pull-back supports meet.
bool is_incidental(const VDeletionMap& map, const BaseSequence& shat);

constexpr long kPullbackListLimit = 200000;

std::vector<BaseSequence> sequence_pullback(const VDeletionMap& map,
                                            const FrameMatroid& m,
                                            const BaseSequence& shat,
                                            long limit = kPullbackListLimit);

// A pull-back of shat2 agreeing with s at every position where shat2 keeps
// an Ê-touching base of shat; first such sequence in position order.
BaseSequence induced_pullback(const VDeletionMap& map, const FrameMatroid& m,
                              const BaseSequence& shat,
                              const BaseSequence& shat2,
                              const BaseSequence& s);

}  // namespace bm

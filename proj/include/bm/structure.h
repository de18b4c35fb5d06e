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

// How bases of a v-deleted matroid meet the new edges for a set I of
// indices at v: replacement sets, amenable retargeting, and switching.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bm/vdeletion.h"

namespace bm {

// I, a sorted set of positions in map.v_edges, and the new edges between
// them.  Every pair must have a new edge, so I holds at most one loop.
struct ISelection {
  std::vector<int> I;
  EdgeSet h = 0;
  std::vector<int> ends_i, ends_j;  // index pair of each edge in h, by id

  // New edge for indices i, j in I.
  int edge(int i, int j) const;
  // Index pair of an edge of h.
  std::pair<int, int> ends(int e) const { return {ends_i[e], ends_j[e]}; }
  // Edges of h sharing no index.
  bool non_incident(int e, int f) const;
};

ISelection make_selection(const VDeletionMap& map, std::vector<int> I);

struct BasePair {
  EdgeSet b1 = 0, b2 = 0;
  bool operator==(const BasePair&) const = default;
};

// {e in h : (b \ h) + e is a base}; empty unless |b ∩ h| = 1.
EdgeSet f_set(const FrameMatroid& mh, const ISelection& sel, EdgeSet b);

struct IClassification {
  bool cyclic = false;
  bool singular = false;
  bool strictly_cyclic() const { return cyclic && !singular; }
  bool strictly_singular() const { return singular && !cyclic; }
  std::string name() const;
};

// Cyclic: some |I|-cycle on I has all its edges in F.  Singular: some index
// has all its edges in F.  Classification of the set f directly.
IClassification classify_fset(const ISelection& sel, EdgeSet f);
IClassification classify_I(const FrameMatroid& mh, const ISelection& sel,
                           EdgeSet b);

// The trace (b1 ∪ b2) ∩ h must have two edges.
bool is_viable(const ISelection& sel, const BasePair& p);

// All pairs agreeing with p off h whose trace is {e, f}, lex sorted.
std::vector<BasePair> amenable_witnesses(const FrameMatroid& mh,
                                         const ISelection& sel,
                                         const BasePair& p, int e, int f);
std::optional<BasePair> amenable(const FrameMatroid& mh, const ISelection& sel,
                                 const BasePair& p, int e, int f);

// One step: retarget to (c1, c2) giving a_prime, symmetric exchange (e, f)
// giving b_prime.  Both intermediate pairs are viable.
struct ArrowStep {
  int c1 = -1, c2 = -1;
  BasePair a_prime;
  int e = -1, f = -1;
  BasePair b_prime;
};

struct SwitchCertificate {
  BasePair start;
  std::vector<ArrowStep> steps;
  int target_e = -1, target_f = -1;
  BasePair witness;  // amenable witness of the last pair at the target
};

enum class SwitchStatus { Found, NotSwitchable, BudgetExceeded };

struct SwitchResult {
  SwitchStatus status = SwitchStatus::NotSwitchable;
  std::optional<SwitchCertificate> cert;
  long states = 0;
};

constexpr long kSwitchBudget = 100000;

// Chains of viable retarget-and-exchange steps from p until a pair is
// amenable at one of the targets (each an unordered edge pair in h).
SwitchResult arrow_search(const FrameMatroid& mh, const ISelection& sel,
                          const BasePair& p,
                          const std::vector<std::pair<int, int>>& targets,
                          long budget = kSwitchBudget);

// |I| = 4, e in F(b1), f in F(b2), e and f non-incident; targets are the
// two other perfect matchings of I.
SwitchResult switchable(const FrameMatroid& mh, const ISelection& sel,
                        const BasePair& p, int e, int f,
                        long budget = kSwitchBudget);

bool replay_switch(const FrameMatroid& mh, const ISelection& sel,
                   const SwitchCertificate& cert);

// The other two perfect matchings of I = {i1 < i2 < i3 < i4} relative to
// the matching containing e.
std::vector<std::pair<int, int>> crossed_matchings(const ISelection& sel,
                                                   int e);

struct FSetExchangeReport {
  long exchanges = 0;
  long violations = 0;
  std::string first_violation;
  bool ok() const { return violations == 0; }
};

// For a non-switchable pair (e in F(b1), f in F(b2)): every symmetric
// exchange keeps {F(b1), F(b2)} or empties both.  PreconditionViolated if
// the pair is switchable or the search hits its budget.
FSetExchangeReport check_exchange_preserves_fsets(const FrameMatroid& mh,
                                                  const ISelection& sel,
                                                  const BasePair& p, int e,
                                                  int f);

// Two vertex-disjoint cycles joined by a path with at least one edge, each
// cycle holding exactly one of a, b.
bool is_two_cycle_handcuff(const MultiGraph& g, EdgeSet c, int a, int b);

enum class SeqSplit { Split, Fused, Absent };
const char* split_name(SeqSplit s);
SeqSplit split_or_fused(const BaseSequence& s, int a, int b);

// Replaces the two bases holding a and b (split, and together meeting the
// new edges exactly in {a, b}) by the first viable amenable witness at
// (e, f).  NotAmenable if none; PreconditionViolated if not split.
BaseSequence perturb(const FrameMatroid& mh, const VDeletionMap& map,
                     const ISelection& sel, const BaseSequence& s, int a,
                     int b, int e, int f);

// Some pair of positions whose trace on h has two edges reaches, through
// the arrow relation, a pair with trace a crossed matching of the matching
// {m1, m2}.  Returns the sequence with that pair replaced.
BaseSequence e_switch(const FrameMatroid& mh, const ISelection& sel,
                      const BaseSequence& s, int m1, int m2,
                      long budget = kSwitchBudget);

// Per-lemma tallies over one matroid and selection.
struct StructureTally {
  LemmaTally beyond_trace;        // |I| = 3: F(b) has more than the trace
  LemmaTally cyclic_or_singular;  // |I| = 4: including the refined form
  LemmaTally non_amenable;        // failing both crossed targets => dichotomy
  LemmaTally modification;        // both base-modification implications
  LemmaTally exchange_fsets;      // non-switchable pairs keep F-sets
  LemmaTally handcuff_shape;      // non-switchable circuit shape
  long switch_found = 0;
  long switch_exhausted = 0;
  long switch_budget = 0;         // inconclusive, excluded
  long pairs_skipped = 0;         // disjoint pairs beyond the pair limit
  bool ok() const;
  void merge(const StructureTally& o);
};

// Runs every check for one selection; pair checks use all ordered pairs
// of disjoint bases meeting h once each, up to pair_limit pairs.
StructureTally check_structure(const FrameMatroid& mh, const ISelection& sel,
                               long pair_limit = 1000000,
                               long budget = kSwitchBudget);

}  // namespace bm

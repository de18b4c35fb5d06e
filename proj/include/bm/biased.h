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

// Biased graphs whose balanced cycles are the simple cycles inside a GF(2)
// subspace of the cycle space.

#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bm/core_graph.h"

namespace bm {

class LinearClass {
 public:
  LinearClass() = default;
  explicit LinearClass(std::vector<EdgeSet> generators);

  const std::vector<EdgeSet>& generator_rows() const { return rows_; }
  // Fully reduced: each row's lowest bit is a pivot absent from all others.
  const std::vector<EdgeSet>& reduced_basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.size()); }

  EdgeSet reduce(EdgeSet x) const;
  bool contains(EdgeSet x) const { return reduce(x) == 0; }
  // Adds x to the span; returns false when it was already a member.
  bool insert(EdgeSet x);

  bool operator==(const LinearClass& o) const { return basis_ == o.basis_; }

 private:
  std::vector<EdgeSet> rows_;
  std::vector<EdgeSet> basis_;
};

struct BiasedGraph {
  MultiGraph graph;
  LinearClass balance;
};

LinearClass linear_completion(const MultiGraph& g,
                              const std::vector<SimpleCycle>& generators);
BiasedGraph graphic_bias(const MultiGraph& g);
BiasedGraph bicircular_bias(const MultiGraph& g);
bool is_balanced(const BiasedGraph& bg, SimpleCycle c);
// Labels are t-bit vectors over Z/2, one per edge; t <= 32.
BiasedGraph from_group_labelling(const MultiGraph& g, int t,
                                 const std::vector<std::uint32_t>& labels);

std::vector<SimpleCycle> balanced_cycles(const BiasedGraph& bg);
EdgeSet balanced_loops(const BiasedGraph& bg);

struct Theta {
  SimpleCycle c1 = 0, c2 = 0, c3 = 0;
};

struct ThetaCheck {
  bool ok = true;
  std::optional<Theta> witness;
};

constexpr int kThetaCheckLimit = 14;
ThetaCheck check_theta_property(const BiasedGraph& bg);
// Standalone variant over an explicit list of balanced cycles.
ThetaCheck check_theta_property(const MultiGraph& g,
                                const std::vector<SimpleCycle>& balanced);

struct LinearityCheck {
  bool ok = true;
  std::optional<SimpleCycle> missing;
};

LinearityCheck check_linearity(const MultiGraph& g,
                               const std::vector<SimpleCycle>& explicit_class);

struct LemmaTally {
  long instances = 0;
  long failures = 0;
  std::string first_failure;
  void record(bool ok, const std::string& what) {
    ++instances;
    if (!ok && failures++ == 0) first_failure = what;
  }
  // Builds the message only on the first failure.
  template <std::invocable F>
  void record(bool ok, F&& what, long times = 1) {
    instances += times;
    if (ok) return;
    if (!failures) first_failure = what();
    failures += times;
  }
};

// Exhaustive instantiation of three spanning-tree cycle lemmas:
//  tree_path_union: a tree path closed by a non-tree path whose fundamental
//    cycles are all balanced is balanced;
//  unbalanced_cotree: an unbalanced cycle avoiding a tree has an unbalanced
//    fundamental cycle among its edges;
//  shared_path: two cycles meeting in a path, tree containing all but one
//    edge of the first and avoiding the second's private path, balanced
//    fundamental cycles on that private path => equal balance.
struct CycleLemmaReport {
  LemmaTally tree_path_union;
  LemmaTally unbalanced_cotree;
  LemmaTally shared_path;
  bool ok() const {
    return !tree_path_union.failures && !unbalanced_cotree.failures &&
           !shared_path.failures;
  }
};

constexpr int kCycleLemmaLimit = 12;
CycleLemmaReport cycle_lemma_harness(const BiasedGraph& bg);

}  // namespace bm

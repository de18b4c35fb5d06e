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

// Frame and lift matroids of a biased graph.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bm/biased.h"

namespace bm {

enum class MatroidKind { Frame, Lift };

enum class CircuitShape {
  BalancedCycle,
  TightHandcuff,
  LooseHandcuff,
  UnbalancedTheta,
  DisjointCycles,
  Unknown,
};

const char* shape_name(CircuitShape s);

struct Circuit {
  EdgeSet edges = 0;
  CircuitShape shape = CircuitShape::Unknown;
  bool operator==(const Circuit&) const = default;
};

// Shape of the subgraph induced by s, assuming s is a circuit.
CircuitShape classify_circuit_shape(const BiasedGraph& bg, EdgeSet s);

constexpr int kBaseEnumerationLimit = 16;
constexpr int kCircuitLimit = 12;

class FrameMatroid {
 public:
  FrameMatroid() = default;
  explicit FrameMatroid(BiasedGraph bg, MatroidKind kind = MatroidKind::Frame);

  const BiasedGraph& biased() const { return bg_; }
  const MultiGraph& graph() const { return bg_.graph; }
  MatroidKind kind() const { return kind_; }
  EdgeSet ground() const { return bg_.graph.all_edges(); }
  int edge_count() const { return bg_.graph.edge_count(); }

  bool is_independent(EdgeSet s) const;
  int rank(EdgeSet s) const;
  int rank() const { return rank_; }
  // Looks up the base list once enumerated; up to 16 edges it enumerates
  // on first use.
  bool is_base(EdgeSet s) const;

  // All bases in lexicographic order, computed once and shared by copies.
  const std::vector<EdgeSet>& bases(bool force = false) const;
  // Position of b in bases(), or -1.
  int base_index(EdgeSet b) const;

 private:
  struct Cache;
  BiasedGraph bg_;
  MatroidKind kind_ = MatroidKind::Frame;
  int rank_ = 0;
  std::shared_ptr<Cache> cache_;
};

std::vector<EdgeSet> bases(const FrameMatroid& m, bool force = false);
std::vector<Circuit> circuits(const FrameMatroid& m);

Circuit fundamental_circuit(const FrameMatroid& m, EdgeSet b, int e);
EdgeSet fundamental_cocircuit(const FrameMatroid& m, EdgeSet b, int e);
EdgeSet closure(const FrameMatroid& m, EdgeSet s);

int symmetric_exchange_witness(const FrameMatroid& m, EdgeSet b1, EdgeSet b2,
                               int e);

struct SerialExchange {
  std::vector<int> out;  // ordering of A1
  std::vector<int> in;   // ordering of A2
  EdgeSet a2() const { return make_set(in); }
};

// Every prefix exchange of the orderings leaves two bases.
bool is_serial_exchange(const FrameMatroid& m, EdgeSet b1, EdgeSet b2,
                        const SerialExchange& x);
SerialExchange two_exchange_witness(const FrameMatroid& m, EdgeSet b1,
                                    EdgeSet b2, EdgeSet a1);
// Experimental: exhaustive k-serial search; no guarantee for k > 2.
std::optional<SerialExchange> serial_exchange_search(const FrameMatroid& m,
                                                     EdgeSet b1, EdgeSet b2,
                                                     EdgeSet a1);

struct AxiomReport {
  long base_pairs = 0;
  long exchange_failures = 0;
  long circuit_pairs = 0;
  long elimination_failures = 0;
  long minimality_failures = 0;
  std::string first_failure;
  bool ok() const {
    return !exchange_failures && !elimination_failures && !minimality_failures;
  }
};

AxiomReport check_base_axioms(const FrameMatroid& m);

}  // namespace bm

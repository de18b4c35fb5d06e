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

// Brute-force reference computations.  Nothing here calls into the engine's
// combinatorial routines: only the raw edge list and the generator rows of a
// balance class are read.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bm/matroid.h"

namespace bm::oracle {

constexpr int kOracleLimit = 12;
constexpr long kConnectivityLimit = 100000;

struct OracleReport {
  std::string quantity;
  std::string engine;
  std::string oracle;
  bool agree = false;
  std::string line() const;
};

OracleReport compare(std::string quantity, const std::string& engine,
                     const std::string& oracle);

bool oracle_span_member(const std::vector<EdgeSet>& basis_rows, EdgeSet v);

// Connected edge sets in which every touched vertex has degree two.
std::vector<EdgeSet> oracle_simple_cycles(const MultiGraph& g);

// Independence from the component description of frame and lift bases.
bool oracle_independent(const FrameMatroid& m, EdgeSet s);
std::vector<EdgeSet> oracle_bases(const FrameMatroid& m);
std::vector<EdgeSet> oracle_circuits(const FrameMatroid& m);

// Kirchhoff determinant; loops ignored, parallel edges counted.
long long matrix_tree_count(const MultiGraph& g);

// Union-find over single-exchange adjacencies found by a pairwise scan.
bool oracle_connectivity(const FrameMatroid& m,
                         const std::vector<std::vector<EdgeSet>>& sequences);

}  // namespace bm::oracle

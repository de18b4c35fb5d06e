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

// Base sequences, symmetric-exchange search, replayable certificates.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bm/matroid.h"

namespace bm {

using BaseSequence = std::vector<EdgeSet>;

struct ExtendedBaseSequence {
  BaseSequence bases;
  int leftover = -1;  // h
  int anchor = -1;    // u
  bool operator==(const ExtendedBaseSequence&) const = default;
};

enum class MoveKind { BB, EB };

// BB: e leaves B_i for B_j, f leaves B_j for B_i.  EB: e in B_i trades
// places with the leftover edge.
struct Move {
  MoveKind kind = MoveKind::BB;
  int i = 0, j = -1, e = 0, f = -1;
  std::uint64_t before_hash = 0, after_hash = 0;
};

struct ExchangeCertificate {
  bool extended = false;
  int anchor = -1;
  BaseSequence start;
  int start_leftover = -1;
  BaseSequence end;
  int end_leftover = -1;
  std::vector<Move> moves;
};

std::uint64_t sequence_hash(const BaseSequence& s, int leftover = -1);
bool sequence_less(const BaseSequence& a, const BaseSequence& b);

// Per-edge multiplicities packed into three bit planes (k <= 7).
using Fingerprint = std::array<std::uint64_t, 3>;
Fingerprint fingerprint(const BaseSequence& s);
std::vector<int> edge_counts(const BaseSequence& s, int edge_count);

bool compatible(const BaseSequence& s1, const BaseSequence& s2);
bool is_base_sequence(const FrameMatroid& m, const BaseSequence& s);
bool is_extended_sequence(const FrameMatroid& m,
                          const ExtendedBaseSequence& s);

std::vector<BaseSequence> neighbors_symmetric(const FrameMatroid& m,
                                              const BaseSequence& s);
std::vector<ExtendedBaseSequence> neighbors_extended(
    const FrameMatroid& m, int u, const ExtendedBaseSequence& s);

// Applies a move in place; false if it is not a legal exchange.
bool apply_move(const FrameMatroid& m, BaseSequence& s, int& leftover,
                int anchor, const Move& mv);

enum class PathStatus { Found, NotConnected, LimitHit };

struct PathResult {
  PathStatus status = PathStatus::NotConnected;
  ExchangeCertificate cert;
  long explored = 0;
};

// Generic breadth-first search over base sequences.  Neighbours are
// expanded in (i, j, e, f) order, then EB moves in (i, e) order.
struct SearchSpec {
  bool extended = false;
  int anchor = -1;
  long node_limit = 1000000;
  // States failing this are neither stored nor expanded.
  std::function<bool(const BaseSequence&, int)> admissible;
  std::function<bool(const BaseSequence&, int)> goal;
};

PathResult search_path(const FrameMatroid& m, const BaseSequence& start,
                       int leftover, const SearchSpec& spec);

struct PathOptions {
  bool modulo_permutation = false;
  long node_limit = 1000000;
};

PathResult exchange_path(const FrameMatroid& m, const BaseSequence& s1,
                         const BaseSequence& s2, const PathOptions& opts = {});
PathResult extended_path(const FrameMatroid& m, int u,
                         const ExtendedBaseSequence& s1,
                         const ExtendedBaseSequence& s2,
                         long node_limit = 1000000);

struct ReplayResult {
  bool ok = false;
  std::string error;
};

ReplayResult replay(const FrameMatroid& m, const ExchangeCertificate& cert);

std::string serialize_certificate(const ExchangeCertificate& cert,
                                  std::uint64_t graph_hash);
// Returns the certificate and the graph hash recorded in its header.
std::pair<ExchangeCertificate, std::uint64_t> parse_certificate(
    const std::string& text);

struct WhiteOptions {
  long state_limit = 10000000;
  long exact_diameter_limit = 512;
  // Called once per compatibility class no larger than class_limit.
  long class_limit = 0;
  std::function<void(const std::vector<BaseSequence>&, bool connected)>
      on_class;
};

struct WhiteReport {
  int k = 0;
  long bases = 0;
  long tuples = 0;
  long classes = 0;
  long counterexamples = 0;
  long largest_class = 0;
  int max_diameter = 0;
  bool diameter_exact = true;
  std::optional<std::pair<BaseSequence, BaseSequence>> counterexample;
};

WhiteReport white_verify(const FrameMatroid& m, int k,
                         const WhiteOptions& opts = {});

struct ExtendedOptions {
  bool override_degree = false;
  long state_limit = 2000000;
};

struct ExtendedReport {
  bool degree_condition = false;
  bool size_condition = false;
  long states = 0;
  long components = 0;
  bool connected() const { return components <= 1; }
  std::optional<std::pair<ExtendedBaseSequence, ExtendedBaseSequence>>
      counterexample;
};

ExtendedReport extended_verify(const FrameMatroid& m, int u, int k,
                               const ExtendedOptions& opts = {});
// Every u-extended base sequence of length k.
std::vector<ExtendedBaseSequence> extended_sequences(const FrameMatroid& m,
                                                     int u, int k,
                                                     long limit = 2000000);

// y_{lhs0} y_{lhs1} - y_{rhs0} y_{rhs1}, each side sorted.
struct Binomial {
  std::array<EdgeSet, 2> lhs{};
  std::array<EdgeSet, 2> rhs{};
};

struct BinomialCertificate {
  std::vector<Binomial> relations;
  bool telescopes = false;
};

BinomialCertificate binomial_certificate(const ExchangeCertificate& cert);

}  // namespace bm

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

#include "bm/biased.h"

#include <algorithm>
#include <unordered_set>

namespace bm {

LinearClass::LinearClass(std::vector<EdgeSet> generators) {
  for (EdgeSet x : generators) insert(x);
  rows_ = std::move(generators);
}

EdgeSet LinearClass::reduce(EdgeSet x) const {
  for (EdgeSet b : basis_)
    if (has(x, lowest(b))) x ^= b;
  return x;
}

bool LinearClass::insert(EdgeSet x) {
  x = reduce(x);
  if (!x) return false;
  int p = lowest(x);
  for (EdgeSet& b : basis_)
    if (has(b, p)) b ^= x;
  basis_.push_back(x);
  std::sort(basis_.begin(), basis_.end(),
            [](EdgeSet a, EdgeSet b) { return lowest(a) < lowest(b); });
  rows_.push_back(x);
  return true;
}

LinearClass linear_completion(const MultiGraph& g,
                              const std::vector<SimpleCycle>& generators) {
  for (SimpleCycle c : generators)
    if (!is_simple_cycle(g, c))
      throw Error(ErrorCode::NotACycle, "generator " + to_string(c));
  return LinearClass(generators);
}

BiasedGraph graphic_bias(const MultiGraph& g) {
  return {g, LinearClass(cycle_space_basis(g))};
}

BiasedGraph bicircular_bias(const MultiGraph& g) { return {g, LinearClass()}; }

bool is_balanced(const BiasedGraph& bg, SimpleCycle c) {
  if (!is_simple_cycle(bg.graph, c))
    throw Error(ErrorCode::NotACycle, to_string(c));
  return bg.balance.contains(c);
}

BiasedGraph from_group_labelling(const MultiGraph& g, int t,
                                 const std::vector<std::uint32_t>& labels) {
  if (static_cast<int>(labels.size()) != g.edge_count())
    throw Error(ErrorCode::LabelCountMismatch,
                std::to_string(labels.size()) + " labels for " +
                    std::to_string(g.edge_count()) + " edges");
  if (t < 1 || t > 32)
    throw Error(ErrorCode::LabelCountMismatch, "label width out of range");
  std::uint32_t mask = t == 32 ? ~0u : (1u << t) - 1;
  for (std::uint32_t x : labels)
    if (x & ~mask)
      throw Error(ErrorCode::LabelCountMismatch, "label wider than t bits");
  // Kernel of the label map on the cycle space, by elimination on
  // (label, cycle) pairs.
  std::vector<std::pair<std::uint32_t, EdgeSet>> pivots;
  std::vector<EdgeSet> kernel;
  for (EdgeSet z : cycle_space_basis(g)) {
    std::uint32_t lab = 0;
    for_each(z, [&](int e) { lab ^= labels[e]; });
    for (const auto& [pl, pz] : pivots)
      if (lab & (pl & -pl)) {
        lab ^= pl;
        z ^= pz;
      }
    if (lab == 0) {
      kernel.push_back(z);
    } else {
      for (auto& [pl, pz] : pivots)
        if (pl & (lab & -lab)) {
          pl ^= lab;
          pz ^= z;
        }
      pivots.emplace_back(lab, z);
    }
  }
  return {g, LinearClass(kernel)};
}

std::vector<SimpleCycle> balanced_cycles(const BiasedGraph& bg) {
  std::vector<SimpleCycle> out;
  for (SimpleCycle c : enumerate_simple_cycles(bg.graph))
    if (bg.balance.contains(c)) out.push_back(c);
  return out;
}

EdgeSet balanced_loops(const BiasedGraph& bg) {
  EdgeSet out = 0;
  for_each(bg.graph.loops(), [&](int e) {
    if (bg.balance.contains(bit(e))) out |= bit(e);
  });
  return out;
}

namespace {

template <class Pred>
ThetaCheck theta_scan(const MultiGraph& g,
                      const std::vector<SimpleCycle>& cycles, Pred balanced) {
  ThetaCheck out;
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      SimpleCycle a = cycles[i], b = cycles[j];
      if (!is_path(g, a & b)) continue;
      SimpleCycle c = a ^ b;
      if (!is_simple_cycle(g, c)) continue;
      int nb = balanced(a) + balanced(b) + balanced(c);
      if (nb == 2) {
        out.ok = false;
        out.witness = Theta{a, b, c};
        return out;
      }
    }
  return out;
}

}  // namespace

ThetaCheck check_theta_property(const BiasedGraph& bg) {
  if (bg.graph.edge_count() > kThetaCheckLimit)
    throw Error(ErrorCode::SizeExceeded, "theta check limited to 14 edges");
  auto cycles = enumerate_simple_cycles(bg.graph);
  return theta_scan(bg.graph, cycles, [&](SimpleCycle c) {
    return bg.balance.contains(c);
  });
}

ThetaCheck check_theta_property(const MultiGraph& g,
                                const std::vector<SimpleCycle>& balanced) {
  if (g.edge_count() > kThetaCheckLimit)
    throw Error(ErrorCode::SizeExceeded, "theta check limited to 14 edges");
  std::unordered_set<EdgeSet> in(balanced.begin(), balanced.end());
  auto cycles = enumerate_simple_cycles(g);
  return theta_scan(g, cycles, [&](SimpleCycle c) { return in.count(c) > 0; });
}

LinearityCheck check_linearity(const MultiGraph& g,
                               const std::vector<SimpleCycle>& explicit_class) {
  if (g.edge_count() > kThetaCheckLimit)
    throw Error(ErrorCode::SizeExceeded, "linearity check limited to 14 edges");
  LinearClass span = linear_completion(g, explicit_class);
  std::unordered_set<EdgeSet> in(explicit_class.begin(), explicit_class.end());
  LinearityCheck out;
  for (SimpleCycle c : enumerate_simple_cycles(g))
    if (span.contains(c) && !in.count(c)) {
      out.ok = false;
      out.missing = c;
      break;
    }
  return out;
}

CycleLemmaReport cycle_lemma_harness(const BiasedGraph& bg) {
  const MultiGraph& g = bg.graph;
  if (g.edge_count() > kCycleLemmaLimit)
    throw Error(ErrorCode::SizeExceeded, "cycle lemma harness limited to 12");
  CycleLemmaReport rep;
  auto cycles = enumerate_simple_cycles(g);
  std::vector<bool> bal(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i)
    bal[i] = bg.balance.contains(cycles[i]);

  struct SharedPair {
    SimpleCycle c1, c2;
    EdgeSet p, p2;
    bool b1, b2;
  };
  std::vector<SharedPair> pairs;
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = 0; j < cycles.size(); ++j) {
      if (i == j) continue;
      EdgeSet p = cycles[i] & cycles[j];
      if (!is_path(g, p)) continue;
      pairs.push_back({cycles[i], cycles[j], p, cycles[j] & ~p, bal[i],
                       bal[j]});
    }

  for (SpanningTree t : spanning_trees(g)) {
    std::vector<bool> fund_bal(g.edge_count(), true);
    for_each(g.all_edges() & ~t, [&](int e) {
      fund_bal[e] = bg.balance.contains(fundamental_cycle(g, t, e));
    });
    auto all_bal = [&](EdgeSet s) {
      bool ok = true;
      for_each(s, [&](int e) { ok = ok && fund_bal[e]; });
      return ok;
    };
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      SimpleCycle c = cycles[i];
      EdgeSet p1 = c & t, p2 = c & ~t;
      if (p1 && p2 && is_path(g, p1) && all_bal(p2))
        rep.tree_path_union.record(
            bal[i], "tree " + to_string(t) + " cycle " + to_string(c));
      if (!p1 && !bal[i]) {
        bool found = false;
        for_each(c, [&](int e) { found = found || !fund_bal[e]; });
        rep.unbalanced_cotree.record(
            found, "tree " + to_string(t) + " cycle " + to_string(c));
      }
    }
    for (const SharedPair& sp : pairs) {
      EdgeSet off = sp.c1 & ~t;
      if (size(off) != 1 || !(off & sp.p) || (sp.p2 & t)) continue;
      if (!all_bal(sp.p2)) continue;
      rep.shared_path.record(sp.b1 == sp.b2, "tree " + to_string(t) +
                                                 " cycles " +
                                                 to_string(sp.c1) + " " +
                                                 to_string(sp.c2));
    }
  }
  return rep;
}

}  // namespace bm

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

#include <algorithm>
#include <atomic>
#include <array>
#include <functional>
#include <mutex>

namespace bm {

const char* shape_name(CircuitShape s) {
  switch (s) {
    case CircuitShape::BalancedCycle: return "balanced-cycle";
    case CircuitShape::TightHandcuff: return "tight-handcuff";
    case CircuitShape::LooseHandcuff: return "loose-handcuff";
    case CircuitShape::UnbalancedTheta: return "unbalanced-theta";
    case CircuitShape::DisjointCycles: return "disjoint-cycles";
    case CircuitShape::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

bool is_bridge(const MultiGraph& g, EdgeSet s, int e) {
  const Edge& ed = g.edge(e);
  if (ed.loop()) return false;
  return !has(reach(g, s & ~bit(e), ed.u), ed.v);
}

}  // namespace

CircuitShape classify_circuit_shape(const BiasedGraph& bg, EdgeSet s) {
  const MultiGraph& g = bg.graph;
  if (is_simple_cycle(g, s))
    return bg.balance.contains(s) ? CircuitShape::BalancedCycle
                                  : CircuitShape::Unknown;
  auto comps = edge_components(g, s);
  if (comps.size() == 2) {
    if (is_simple_cycle(g, comps[0]) && is_simple_cycle(g, comps[1]))
      return CircuitShape::DisjointCycles;
    return CircuitShape::Unknown;
  }
  if (comps.size() != 1) return CircuitShape::Unknown;
  int d3 = 0, d4 = 0, other = 0;
  for_each(g.vertices_of(s), [&](int v) {
    int d = g.degree_in(v, s);
    if (d == 3) ++d3;
    else if (d == 4) ++d4;
    else if (d != 2) ++other;
  });
  if (other) return CircuitShape::Unknown;
  if (d4 == 1 && d3 == 0) return CircuitShape::TightHandcuff;
  if (d3 == 2 && d4 == 0) {
    bool bridge = false;
    for_each(s, [&](int e) { bridge = bridge || is_bridge(g, s, e); });
    return bridge ? CircuitShape::LooseHandcuff
                  : CircuitShape::UnbalancedTheta;
  }
  return CircuitShape::Unknown;
}

struct FrameMatroid::Cache {
  std::once_flag once;
  std::atomic<bool> ready{false};
  std::vector<EdgeSet> bases;
  // Open addressing over the base list; kEmpty is never a base.
  static constexpr EdgeSet kEmpty = ~EdgeSet{0};
  std::vector<EdgeSet> keys;
  std::vector<int> slots;
  EdgeSet mask = 0;

  static std::size_t hash(EdgeSet s) { return (s * 0x9E3779B97F4A7C15ULL) >> 20; }
  void build() {
    std::size_t cap = 16;
    while (cap < 2 * bases.size()) cap <<= 1;
    mask = cap - 1;
    keys.assign(cap, kEmpty);
    slots.assign(cap, -1);
    for (std::size_t i = 0; i < bases.size(); ++i) {
      std::size_t h = hash(bases[i]) & mask;
      while (keys[h] != kEmpty) h = (h + 1) & mask;
      keys[h] = bases[i];
      slots[h] = static_cast<int>(i);
    }
  }
  int find(EdgeSet s) const {
    for (std::size_t h = hash(s) & mask;; h = (h + 1) & mask) {
      if (keys[h] == s) return slots[h];
      if (keys[h] == kEmpty) return -1;
    }
  }
};

bool FrameMatroid::is_base(EdgeSet s) const {
  if (cache_ && edge_count() <= kBaseEnumerationLimit) bases();
  if (cache_ && cache_->ready.load(std::memory_order_acquire))
    return cache_->find(s) >= 0;
  return size(s) == rank_ && !(s & ~ground()) && is_independent(s);
}

FrameMatroid::FrameMatroid(BiasedGraph bg, MatroidKind kind)
    : bg_(std::move(bg)), kind_(kind), cache_(std::make_shared<Cache>()) {
  rank_ = rank(ground());
}

bool FrameMatroid::is_independent(EdgeSet s) const {
  const MultiGraph& g = bg_.graph;
  std::array<int, kMaxVertices> parent;
  std::array<int, kMaxVertices> extra{};
  for_each(g.vertices_of(s), [&](int v) { parent[v] = v; });
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int total = 0;
  bool ok = true;
  for_each(s, [&](int e) {
    int a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a == b) {
      ++total;
      if (++extra[a] > 1) ok = false;
    } else {
      parent[a] = b;
      extra[b] += extra[a];
      if (extra[b] > 1) ok = false;
    }
  });
  if (!ok || (kind_ == MatroidKind::Lift && total > 1)) return false;
  if (total == 0) return true;
  EdgeSet core = cycle_core(g, s);
  if (total == 1) return !bg_.balance.contains(core);
  for (EdgeSet c : edge_components(g, core))
    if (bg_.balance.contains(c)) return false;
  return true;
}

int FrameMatroid::rank(EdgeSet s) const {
  EdgeSet ind = 0;
  for_each(s, [&](int e) {
    if (is_independent(ind | bit(e))) ind |= bit(e);
  });
  return size(ind);
}

const std::vector<EdgeSet>& FrameMatroid::bases(bool force) const {
  if (edge_count() > kBaseEnumerationLimit && !force)
    throw Error(ErrorCode::SizeExceeded,
                "base enumeration limited to 16 edges");
  std::call_once(cache_->once, [&] {
    int m = edge_count();
    std::vector<EdgeSet>& out = cache_->bases;
    std::function<void(int, EdgeSet, int)> rec = [&](int i, EdgeSet cur,
                                                     int cnt) {
      if (cnt == rank_) {
        out.push_back(cur);
        return;
      }
      if (m - i < rank_ - cnt) return;
      if (is_independent(cur | bit(i))) rec(i + 1, cur | bit(i), cnt + 1);
      rec(i + 1, cur, cnt);
    };
    rec(0, 0, 0);
    cache_->build();
    cache_->ready.store(true, std::memory_order_release);
  });
  return cache_->bases;
}

int FrameMatroid::base_index(EdgeSet b) const {
  bases(true);
  return cache_->find(b);
}

std::vector<EdgeSet> bases(const FrameMatroid& m, bool force) {
  return m.bases(force);
}

std::vector<Circuit> circuits(const FrameMatroid& m) {
  const BiasedGraph& bg = m.biased();
  const MultiGraph& g = bg.graph;
  if (g.edge_count() > kCircuitLimit)
    throw Error(ErrorCode::SizeExceeded, "circuit listing limited to 12");
  auto cycles = enumerate_simple_cycles(g);
  std::vector<SimpleCycle> unbal;
  std::vector<Circuit> out;
  for (SimpleCycle c : cycles) {
    if (bg.balance.contains(c))
      out.push_back({c, CircuitShape::BalancedCycle});
    else
      unbal.push_back(c);
  }
  for (std::size_t i = 0; i < unbal.size(); ++i) {
    for (std::size_t j = i + 1; j < unbal.size(); ++j) {
      SimpleCycle a = unbal[i], b = unbal[j];
      VertexSet va = g.vertices_of(a), vb = g.vertices_of(b);
      VertexSet common = va & vb;
      if (size(common) == 1 && !(a & b)) {
        out.push_back({a | b, CircuitShape::TightHandcuff});
        continue;
      }
      if (!common) {
        if (m.kind() == MatroidKind::Lift) {
          out.push_back({a | b, CircuitShape::DisjointCycles});
          continue;
        }
        EdgeSet avoid = a | b | g.loops();
        std::function<void(int, VertexSet, EdgeSet)> dfs =
            [&](int x, VertexSet seen, EdgeSet path) {
              for_each(g.incident(x) & ~avoid & ~path, [&](int f) {
                int y = g.other_end(f, x);
                if (has(vb, y)) {
                  out.push_back({a | b | path | bit(f),
                                 CircuitShape::LooseHandcuff});
                } else if (!has(va, y) && !has(seen, y)) {
                  dfs(y, seen | bit(y), path | bit(f));
                }
              });
            };
        for_each(va, [&](int x) { dfs(x, bit(x), 0); });
        continue;
      }
      if (is_path(g, a & b)) {
        SimpleCycle c = a ^ b;
        if (is_simple_cycle(g, c) && !bg.balance.contains(c))
          out.push_back({a | b, CircuitShape::UnbalancedTheta});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Circuit& x, const Circuit& y) {
    return lex_less(x.edges, y.edges);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Circuit& x, const Circuit& y) {
                          return x.edges == y.edges;
                        }),
            out.end());
  return out;
}

namespace {

void require_base(const FrameMatroid& m, EdgeSet b) {
  if (!m.is_base(b)) throw Error(ErrorCode::NotABase, to_string(b));
}

}  // namespace

Circuit fundamental_circuit(const FrameMatroid& m, EdgeSet b, int e) {
  require_base(m, b);
  if (has(b, e))
    throw Error(ErrorCode::ElementInBase, "edge " + std::to_string(e));
  EdgeSet c = bit(e);
  for_each(b, [&](int f) {
    if (m.is_base((b & ~bit(f)) | bit(e))) c |= bit(f);
  });
  return {c, classify_circuit_shape(m.biased(), c)};
}

EdgeSet fundamental_cocircuit(const FrameMatroid& m, EdgeSet b, int e) {
  require_base(m, b);
  if (!has(b, e))
    throw Error(ErrorCode::ElementNotInBase, "edge " + std::to_string(e));
  EdgeSet c = bit(e);
  for_each(m.ground() & ~b, [&](int f) {
    if (m.is_base((b & ~bit(e)) | bit(f))) c |= bit(f);
  });
  return c;
}

EdgeSet closure(const FrameMatroid& m, EdgeSet s) {
  int r = m.rank(s);
  EdgeSet out = s;
  for_each(m.ground() & ~s, [&](int e) {
    if (m.rank(s | bit(e)) == r) out |= bit(e);
  });
  return out;
}

int symmetric_exchange_witness(const FrameMatroid& m, EdgeSet b1, EdgeSet b2,
                               int e) {
  require_base(m, b1);
  require_base(m, b2);
  if (!has(b1, e))
    throw Error(ErrorCode::ElementNotInBase, "edge " + std::to_string(e));
  int found = -1;
  for_each(b2, [&](int f) {
    if (found >= 0) return;
    if (m.is_base((b1 & ~bit(e)) | bit(f)) &&
        m.is_base((b2 & ~bit(f)) | bit(e)))
      found = f;
  });
  if (found < 0)
    throw Error(ErrorCode::NoWitness,
                "symmetric exchange for edge " + std::to_string(e));
  return found;
}

bool is_serial_exchange(const FrameMatroid& m, EdgeSet b1, EdgeSet b2,
                        const SerialExchange& x) {
  if (x.out.size() != x.in.size()) return false;
  for (std::size_t i = 0; i < x.out.size(); ++i) {
    b1 = (b1 & ~bit(x.out[i])) | bit(x.in[i]);
    b2 = (b2 & ~bit(x.in[i])) | bit(x.out[i]);
    if (!m.is_base(b1) || !m.is_base(b2)) return false;
  }
  return true;
}

std::optional<SerialExchange> serial_exchange_search(const FrameMatroid& m,
                                                     EdgeSet b1, EdgeSet b2,
                                                     EdgeSet a1) {
  require_base(m, b1);
  require_base(m, b2);
  if (a1 & ~b1)
    throw Error(ErrorCode::PreconditionViolated, "A1 is not inside B1");
  int k = size(a1);
  std::vector<int> pool = elements(b2);
  std::vector<int> outs = elements(a1);
  std::optional<SerialExchange> found;
  // k-subsets of b2 in lexicographic order.
  std::vector<int> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (found) return;
    if (static_cast<int>(pick.size()) == k) {
      std::vector<int> o = outs;
      do {
        std::vector<int> in = pick;
        do {
          SerialExchange x{o, in};
          if (is_serial_exchange(m, b1, b2, x)) {
            found = x;
            return;
          }
        } while (std::next_permutation(in.begin(), in.end()));
      } while (std::next_permutation(o.begin(), o.end()));
      return;
    }
    for (std::size_t i = from; i < pool.size() && !found; ++i) {
      pick.push_back(pool[i]);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);
  return found;
}

SerialExchange two_exchange_witness(const FrameMatroid& m, EdgeSet b1,
                                    EdgeSet b2, EdgeSet a1) {
  if (m.rank() < 2)
    throw Error(ErrorCode::PreconditionViolated, "rank below 2");
  if (size(a1) != 2)
    throw Error(ErrorCode::PreconditionViolated, "A1 must have two elements");
  auto x = serial_exchange_search(m, b1, b2, a1);
  if (!x)
    throw Error(ErrorCode::NoWitness,
                "2-serial exchange for " + to_string(a1) + " between " +
                    to_string(b1) + " and " + to_string(b2));
  return *x;
}

AxiomReport check_base_axioms(const FrameMatroid& m) {
  if (m.edge_count() > kCircuitLimit)
    throw Error(ErrorCode::SizeExceeded, "axiom check limited to 12 edges");
  AxiomReport rep;
  auto fail = [&](long& counter, const std::string& what) {
    if (rep.first_failure.empty()) rep.first_failure = what;
    ++counter;
  };
  const auto& bs = m.bases();
  for (EdgeSet b1 : bs)
    for (EdgeSet b2 : bs) {
      ++rep.base_pairs;
      for_each(b1 & ~b2, [&](int e) {
        bool ok = false;
        for_each(b2 & ~b1, [&](int f) {
          ok = ok || m.is_base((b1 & ~bit(e)) | bit(f));
        });
        if (!ok)
          fail(rep.exchange_failures, "exchange " + to_string(b1) + " " +
                                          to_string(b2) + " e=" +
                                          std::to_string(e));
      });
    }
  auto cs = circuits(m);
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      EdgeSet both = cs[i].edges & cs[j].edges;
      for_each(both, [&](int e) {
        ++rep.circuit_pairs;
        if (m.is_independent((cs[i].edges | cs[j].edges) & ~bit(e)))
          fail(rep.elimination_failures,
               "elimination " + to_string(cs[i].edges) + " " +
                   to_string(cs[j].edges) + " e=" + std::to_string(e));
      });
    }
  for (const Circuit& c : cs) {
    bool minimal = !m.is_independent(c.edges);
    for_each(c.edges, [&](int e) {
      minimal = minimal && m.is_independent(c.edges & ~bit(e));
    });
    if (!minimal) fail(rep.minimality_failures, "circuit " + to_string(c.edges));
  }
  for (EdgeSet s = 0; s <= m.ground(); ++s) {
    bool contains = false;
    for (const Circuit& c : cs) contains = contains || !(c.edges & ~s);
    if (contains == m.is_independent(s))
      fail(rep.minimality_failures, "dependence of " + to_string(s));
    if (s == m.ground()) break;
  }
  return rep;
}

}  // namespace bm

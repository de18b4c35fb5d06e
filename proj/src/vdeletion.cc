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

#include "bm/vdeletion.h"

#include <algorithm>
#include <functional>
#include <numeric>

namespace bm {

int VDeletionMap::hat_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const HatEdge& h : hat_edges)
    if (h.i == i && h.j == j) return h.id;
  return -1;
}

VDeletionMap v_delete(const BiasedGraph& bg, int v, const VDeleteOptions& opt) {
  const MultiGraph& g = bg.graph;
  if (v < 0 || v >= g.vertex_count())
    throw Error(ErrorCode::PreconditionViolated, "vertex out of range");
  if (EdgeSet bl = balanced_loops(bg))
    throw Error(ErrorCode::BalancedLoopPresent,
                "source has balanced loops " + to_string(bl));
  VDeletionMap map;
  map.source = bg;
  map.v = v;
  map.v_edges = elements(g.incident(v));
  const int m = static_cast<int>(map.v_edges.size());
  if (m > kVDeleteIncidenceLimit)
    throw Error(ErrorCode::SizeExceeded,
                "v-deletion limited to " +
                    std::to_string(kVDeleteIncidenceLimit) + " edges at v");

  map.vertex_map.assign(g.vertex_count(), -1);
  for (int x = 0, y = 0; x < g.vertex_count(); ++x)
    if (x != v) map.vertex_map[x] = y++;
  const auto& vm = map.vertex_map;

  std::vector<Edge> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (has(g.incident(v), e)) continue;
    edges.push_back({vm[g.edge(e).u], vm[g.edge(e).v]});
    map.source_edge.push_back(e);
    map.pull.push_back(bit(e));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      int ei = map.v_edges[i], ej = map.v_edges[j];
      bool li = g.edge(ei).loop(), lj = g.edge(ej).loop();
      if (li && lj) continue;
      HatEdge h{static_cast<int>(edges.size()), i, j, li || lj};
      if (h.id >= kMaxEdges)
        throw Error(ErrorCode::SizeExceeded, "v-deleted graph exceeds 64 edges");
      if (h.stem_loop) {
        int x = vm[g.other_end(li ? ej : ei, v)];
        edges.push_back({x, x});
        map.stem_loops |= bit(h.id);
      } else {
        edges.push_back({vm[g.other_end(ei, v)], vm[g.other_end(ej, v)]});
      }
      map.source_edge.push_back(-1);
      map.pull.push_back(bit(ei) | bit(ej));
      map.hat_set |= bit(h.id);
      map.hat_edges.push_back(h);
    }
  }
  MultiGraph ghat(g.vertex_count() - 1, edges);

  map.target.graph = ghat;
  for (SimpleCycle c : enumerate_simple_cycles(ghat, kMaxEdges)) {
    if (c & map.stem_loops) continue;
    EdgeSet pc = pull_back_edges(map, c);
    bool accept;
    if (!(c & map.hat_set)) {
      accept = bg.balance.contains(pc);
    } else if (pc == 0) {
      accept = true;
    } else {
      accept = true;
      for (SimpleCycle p : petals(map, c))
        if (!bg.balance.contains(p)) accept = false;
    }
    if (!accept) continue;
    if (size(c) == 1 && ghat.edge(lowest(c)).loop()) {
      map.dropped_balanced_loops |= c;
      continue;
    }
    map.generators.push_back(c);
  }
  if (opt.strict && map.dropped_balanced_loops)
    throw Error(ErrorCode::BalancedLoopPresent,
                "target would have balanced loops " +
                    to_string(map.dropped_balanced_loops));
  map.target.balance = LinearClass(map.generators);
  map.hat_matroid = FrameMatroid(map.target, opt.kind);
  return map;
}

EdgeSet pull_back_edges(const VDeletionMap& map, EdgeSet fhat) {
  EdgeSet out = 0;
  for_each(fhat, [&](int e) { out ^= map.pull[e]; });
  return out;
}

EdgeSet pull_back_support(const VDeletionMap& map, EdgeSet fhat) {
  EdgeSet out = 0;
  for_each(fhat & map.hat_set, [&](int e) { out |= map.pull[e]; });
  return out;
}

EdgeSet old_part(const VDeletionMap& map, EdgeSet fhat) {
  return pull_back_edges(map, fhat & ~map.hat_set);
}

std::vector<SimpleCycle> petals(const VDeletionMap& map, SimpleCycle chat) {
  const MultiGraph& g = map.source.graph;
  if (chat & map.stem_loops)
    throw Error(ErrorCode::StemLoop, to_string(chat));
  if (!is_simple_cycle(map.target.graph, chat))
    throw Error(ErrorCode::NotACycle, to_string(chat));
  EdgeSet c = pull_back_edges(map, chat);
  if (c == 0) throw Error(ErrorCode::EmptyPullback, to_string(chat));

  // Components of c once v is split apart: edges join only at other vertices.
  std::vector<int> ids = elements(c);
  std::vector<int> parent(ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int x = 0; x < g.vertex_count(); ++x) {
    if (x == map.v) continue;
    int first = -1;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!has(g.vertices_of_edge(ids[k]), x)) continue;
      if (first < 0) first = static_cast<int>(k);
      else parent[find(static_cast<int>(k))] = find(first);
    }
  }
  std::vector<EdgeSet> groups(ids.size(), 0);
  for (std::size_t k = 0; k < ids.size(); ++k)
    groups[find(static_cast<int>(k))] |= bit(ids[k]);
  std::vector<SimpleCycle> out;
  for (EdgeSet p : groups) {
    if (!p) continue;
    if (!is_simple_cycle(g, p))
      throw Error(ErrorCode::PreconditionViolated,
                  "pull-back of " + to_string(chat) + " has non-cycle part " +
                      to_string(p));
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

PreservationReport check_unbalanced_preservation(const VDeletionMap& map) {
  PreservationReport rep;
  const MultiGraph& g = map.source.graph;
  for (SimpleCycle c : enumerate_simple_cycles(map.target.graph, kMaxEdges)) {
    ++rep.cycles;
    EdgeSet pc = pull_back_edges(map, c);
    if (!pc || !is_simple_cycle(g, pc) || map.source.balance.contains(pc))
      continue;
    ++rep.checked;
    if (map.target.balance.contains(c) && rep.violations++ == 0)
      rep.first_violation = "cycle " + to_string(c) + " pulls back to " +
                            to_string(pc) + " but is balanced";
  }
  return rep;
}

PreservationReport check_unbalanced_preservation(const BiasedGraph& bg,
                                                 int v) {
  return check_unbalanced_preservation(v_delete(bg, v));
}

std::vector<EdgeSet> base_set_pullback(const VDeletionMap& map,
                                       const FrameMatroid& m, EdgeSet bhat) {
  if (!map.hat_matroid.is_base(bhat))
    throw Error(ErrorCode::NotABase, to_string(bhat));
  EdgeSet under = old_part(map, bhat);
  std::vector<EdgeSet> out;
  if (!(bhat & map.hat_set)) {
    for (int e : map.v_edges)
      if (m.is_base(under | bit(e))) out.push_back(under | bit(e));
  } else {
    EdgeSet u = pull_back_support(map, bhat);
    int need = m.rank() - size(under);
    for (EdgeSet a = u;; a = (a - 1) & u) {
      if (size(a) == need && m.is_base(under | a)) out.push_back(under | a);
      if (a == 0) break;
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

bool in_base_set_pullback(const VDeletionMap& map, const FrameMatroid& m,
                          EdgeSet bhat, EdgeSet b) {
  EdgeSet ev = map.v_edge_set();
  if (!m.is_base(b) || (b & ~ev) != old_part(map, bhat)) return false;
  if (!(bhat & map.hat_set)) return size(b & ev) == 1;
  return !((b & ev) & ~pull_back_support(map, bhat));
}

CoverCertificate cover_certificate(const VDeletionMap& map,
                                   const FrameMatroid& m, EdgeSet b) {
  if (!m.is_base(b)) throw Error(ErrorCode::NotABase, to_string(b));
  const MultiGraph& g = map.source.graph;
  EdgeSet ev = map.v_edge_set();
  EdgeSet a = b & ev;
  EdgeSet uhat = 0;
  for (std::size_t e = 0; e < map.source_edge.size(); ++e)
    if (map.source_edge[e] >= 0 && has(b, map.source_edge[e]))
      uhat |= bit(static_cast<int>(e));

  CoverCertificate cert;
  int preferred = -1;
  EdgeSet core = cycle_core(g, b) & ev & ~g.loops();
  if (size(core) == 2) {
    auto pos = [&](int e) {
      return static_cast<int>(
          std::find(map.v_edges.begin(), map.v_edges.end(), e) -
          map.v_edges.begin());
    };
    cert.refinement_applicable = true;
    cert.pair_i = pos(lowest(core));
    cert.pair_j = pos(lowest(core & (core - 1)));
    preferred = map.hat_edge(cert.pair_i, cert.pair_j);
  }

  const FrameMatroid& mh = map.hat_matroid;
  int t = mh.rank() - size(uhat);
  auto accept = [&](EdgeSet bh) {
    return mh.is_base(bh) && in_base_set_pullback(map, m, bh, b);
  };
  if (t == 0 && accept(uhat)) {
    cert.bhat = uhat;
    return cert;
  }
  std::vector<int> hat_ids = elements(map.hat_set);
  // First-found in increasing id order is the lex-first completion.
  std::function<bool(std::size_t, EdgeSet, int)> dfs =
      [&](std::size_t k, EdgeSet cur, int left) -> bool {
    if (left == 0) {
      if (!accept(cur)) return false;
      cert.bhat = cur;
      return true;
    }
    for (std::size_t q = k; q + left <= hat_ids.size(); ++q) {
      EdgeSet nxt = cur | bit(hat_ids[q]);
      if (!mh.is_independent(nxt)) continue;
      if (dfs(q + 1, nxt, left - 1)) return true;
    }
    return false;
  };
  if (t > 0 && preferred >= 0 && mh.is_independent(uhat | bit(preferred)) &&
      dfs(0, uhat | bit(preferred), t - 1)) {
    cert.refinement_honoured = true;
    return cert;
  }
  if (t > 0 && dfs(0, uhat, t)) {
    cert.refinement_honoured =
        preferred >= 0 && has(cert.bhat, preferred);
    return cert;
  }
  throw Error(ErrorCode::NoWitness,
              "no base of the v-deleted matroid covers " + to_string(b) +
                  " (edges at v " + to_string(a) + ")");
}

bool is_incidental(const VDeletionMap& map, const BaseSequence& shat) {
  EdgeSet seen = 0;
  for (EdgeSet bh : shat) {
    EdgeSet sup = pull_back_support(map, bh);
    if (sup & seen) return true;
    seen |= sup;
  }
  return false;
}

namespace {

// Lex-first-by-position disjoint choices from per-position candidate lists.
void disjoint_product(const std::vector<std::vector<EdgeSet>>& lists,
                      const std::function<bool(const BaseSequence&)>& emit) {
  BaseSequence cur(lists.size());
  std::function<bool(std::size_t, EdgeSet)> rec = [&](std::size_t i,
                                                       EdgeSet used) {
    if (i == lists.size()) return emit(cur);
    for (EdgeSet b : lists[i]) {
      if (b & used) continue;
      cur[i] = b;
      if (!rec(i + 1, used | b)) return false;
    }
    return true;
  };
  rec(0, 0);
}

}  // namespace

std::vector<BaseSequence> sequence_pullback(const VDeletionMap& map,
                                            const FrameMatroid& m,
                                            const BaseSequence& shat,
                                            long limit) {
  std::vector<std::vector<EdgeSet>> lists;
  for (EdgeSet bh : shat) lists.push_back(base_set_pullback(map, m, bh));
  std::vector<BaseSequence> out;
  disjoint_product(lists, [&](const BaseSequence& s) {
    if (static_cast<long>(out.size()) >= limit)
      throw Error(ErrorCode::SizeExceeded,
                  "sequence pull-back exceeds " + std::to_string(limit));
    out.push_back(s);
    return true;
  });
  return out;
}

BaseSequence induced_pullback(const VDeletionMap& map, const FrameMatroid& m,
                              const BaseSequence& shat,
                              const BaseSequence& shat2,
                              const BaseSequence& s) {
  if (shat.size() != shat2.size() || shat.size() != s.size())
    throw Error(ErrorCode::LengthMismatch, "sequence lengths differ");
  if (is_incidental(map, shat) || is_incidental(map, shat2))
    throw Error(ErrorCode::PreconditionViolated, "incidental sequence");
  EdgeSet used = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((s[i] & used) || !in_base_set_pullback(map, m, shat[i], s[i]))
      throw Error(ErrorCode::PreconditionViolated,
                  "s is not a pull-back of the first sequence");
    used |= s[i];
  }
  std::vector<std::vector<EdgeSet>> lists;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (shat2[i] == shat[i] && (shat[i] & map.hat_set))
      lists.push_back({s[i]});
    else
      lists.push_back(base_set_pullback(map, m, shat2[i]));
  }
  BaseSequence found;
  disjoint_product(lists, [&](const BaseSequence& t) {
    found = t;
    return false;
  });
  if (found.empty() && !s.empty())
    throw Error(ErrorCode::NoInducedChoice,
                "no disjoint pull-back agrees with s on fixed positions");
  return found;
}

}  // namespace bm

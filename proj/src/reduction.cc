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

#include "bm/reduction.h"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace bm {

namespace {

ExchangeCertificate empty_cert(const BaseSequence& s) {
  ExchangeCertificate c;
  c.start = s;
  c.end = s;
  return c;
}

void append(ExchangeCertificate& c, const ExchangeCertificate& more) {
  c.moves.insert(c.moves.end(), more.moves.begin(), more.moves.end());
  c.end = more.end;
}

MEdge norm(int a, int b) { return a < b ? MEdge{a, b} : MEdge{b, a}; }

MatchingGraph with_edges(const MatchingGraph& g, std::vector<MEdge> drop,
                         std::vector<MEdge> add) {
  MatchingGraph out = g;
  out.edges.clear();
  for (MEdge e : g.edges)
    if (std::find(drop.begin(), drop.end(), e) == drop.end())
      out.edges.push_back(e);
  for (MEdge e : add) out.edges.push_back(e);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::pair<int, long> score(const MatchingGraph& a, const MatchingGraph& b) {
  MatchingDiff d = matching_diff(a, b);
  return {d.epsilon, d.c2};
}

}  // namespace

KappaLift build_gkappa(const FrameMatroid& m, const BaseSequence& s1,
                       const BaseSequence& s2) {
  if (!compatible(s1, s2))
    throw Error(ErrorCode::NotCompatible, "sequences differ as edge multisets");
  const MultiGraph& g = m.graph();
  std::vector<int> w = edge_counts(s1, g.edge_count());
  DuplicationMap dup;
  dup.copies.resize(g.edge_count());
  std::vector<Edge> edges;
  for (int e = 0; e < g.edge_count(); ++e)
    for (int c = 0; c < w[e]; ++c) {
      dup.copies[e].push_back(static_cast<int>(edges.size()));
      dup.original.push_back(e);
      edges.push_back(g.edge(e));
    }
  if (edges.size() > 64)
    throw Error(ErrorCode::SizeExceeded, "G_kappa has more than 64 edges");

  // Balanced classes restricted to kept edges, then lifted onto copy 0;
  // 2-subsets of copies span the kernel of the projection.
  std::vector<EdgeSet> rows = m.biased().balance.reduced_basis();
  for (int e = 0; e < g.edge_count(); ++e) {
    if (w[e]) continue;
    auto piv = std::find_if(rows.begin(), rows.end(),
                            [&](EdgeSet r) { return has(r, e); });
    if (piv == rows.end()) continue;
    EdgeSet p = *piv;
    rows.erase(piv);
    for (EdgeSet& r : rows)
      if (has(r, e)) r ^= p;
  }
  std::vector<EdgeSet> gens;
  for (EdgeSet r : rows) {
    EdgeSet lifted = 0;
    for_each(r, [&](int e) { lifted |= bit(dup.copies[e][0]); });
    gens.push_back(lifted);
  }
  for (const auto& cs : dup.copies)
    for (std::size_t c = 1; c < cs.size(); ++c)
      gens.push_back(bit(cs[0]) | bit(cs[c]));
  dup.kappa = {MultiGraph(g.vertex_count(), edges), LinearClass(gens)};

  auto lift = [&](const BaseSequence& s) {
    std::vector<int> used(g.edge_count(), 0);
    BaseSequence out(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i)
      for_each(s[i], [&](int e) { out[i] |= bit(dup.copies[e][used[e]++]); });
    return out;
  };
  KappaLift res{dup, FrameMatroid(dup.kappa, m.kind()), lift(s1), lift(s2)};
  return res;
}

BaseSequence collapse(const DuplicationMap& dup, const BaseSequence& s) {
  BaseSequence out(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i)
    for_each(s[i], [&](int e) { out[i] |= bit(dup.original[e]); });
  return out;
}

int min_degree_vertex(const MultiGraph& g) {
  int best = 0;
  for (int u = 1; u < g.vertex_count(); ++u)
    if (g.degree(u) < g.degree(best)) best = u;
  return best;
}

bool is_v_reduced(const MultiGraph& g, int v, const BaseSequence& s) {
  EdgeSet ev = g.incident(v);
  return std::all_of(s.begin(), s.end(),
                     [&](EdgeSet b) { return size(b & ev) <= 2; });
}

VReduceResult v_reduce(const FrameMatroid& mk, int v, const BaseSequence& s,
                       long node_limit) {
  const MultiGraph& g = mk.graph();
  EdgeSet ev = g.incident(v), all = 0;
  int total = 0;
  for (EdgeSet b : s) {
    all |= b;
    total += size(b);
  }
  int k = static_cast<int>(s.size());
  if (all != mk.ground() || total != mk.edge_count() || !is_base_sequence(mk, s))
    throw Error(ErrorCode::PreconditionViolated,
                "bases must partition the edges");
  if (g.degree(v) > 2 * k)
    throw Error(ErrorCode::PreconditionViolated,
                "d(v) = " + std::to_string(g.degree(v)) + " exceeds 2k");

  VReduceResult res;
  res.cert = empty_cert(s);
  BaseSequence cur = s;
  auto excess = [&](const BaseSequence& t) {
    int x = 0;
    for (EdgeSet b : t) x += std::max(0, size(b & ev) - 2);
    return x;
  };
  while (!is_v_reduced(g, v, cur)) {
    int i = -1, j = -1;
    for (int a = 0; a < k; ++a) {
      if (i < 0 && size(cur[a] & ev) >= 3) i = a;
      if (j < 0 && size(cur[a] & ev) == 1) j = a;
    }
    bool done = false;
    if (j >= 0) {
      for_each(cur[i] & ev, [&](int x) {
        for_each(cur[j] & ~ev, [&](int y) {
          if (done) return;
          EdgeSet ni = (cur[i] & ~bit(x)) | bit(y);
          EdgeSet nj = (cur[j] & ~bit(y)) | bit(x);
          if (!mk.is_base(ni) || !mk.is_base(nj)) return;
          Move mv;
          mv.i = i;
          mv.j = j;
          mv.e = x;
          mv.f = y;
          mv.before_hash = sequence_hash(cur);
          cur[i] = ni;
          cur[j] = nj;
          mv.after_hash = sequence_hash(cur);
          res.cert.moves.push_back(mv);
          done = true;
        });
      });
    }
    if (done) {
      ++res.lemma_moves;
      continue;
    }
    ++res.fallbacks;
    int before = excess(cur);
    SearchSpec spec;
    spec.node_limit = node_limit;
    spec.goal = [&](const BaseSequence& t, int) { return excess(t) < before; };
    PathResult r = search_path(mk, cur, -1, spec);
    if (r.status != PathStatus::Found) {
      res.out = cur;
      res.cert.end = cur;
      return res;
    }
    append(res.cert, r.cert);
    cur = r.cert.end;
  }
  res.out = cur;
  res.cert.end = cur;
  res.ok = true;
  return res;
}

std::vector<int> MatchingGraph::isolated() const {
  std::vector<bool> used(m, false);
  for (auto [a, b] : edges) used[a] = used[b] = true;
  std::vector<int> out;
  for (int x = 0; x < m; ++x)
    if (!used[x]) out.push_back(x);
  return out;
}

bool MatchingGraph::has(MEdge e) const {
  return std::binary_search(edges.begin(), edges.end(), norm(e.first, e.second));
}

MatchingGraph matching_graph(const MultiGraph& g, int v, const BaseSequence& s) {
  std::vector<int> ev = elements(g.incident(v));
  MatchingGraph out;
  out.m = static_cast<int>(ev.size());
  auto pos = [&](int e) {
    return static_cast<int>(std::find(ev.begin(), ev.end(), e) - ev.begin());
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<int> t = elements(s[i] & g.incident(v));
    if (t.size() > 2)
      throw Error(ErrorCode::NotVReduced,
                  "base " + std::to_string(i) + " meets E(v) in " +
                      std::to_string(t.size()) + " edges");
    if (t.size() < 2) continue;
    out.edges.push_back(norm(pos(t[0]), pos(t[1])));
    if (has(g.loops(), t[0]) || has(g.loops(), t[1])) out.loop_edge = true;
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

bool MatchingDiff::single_four_cycle() const {
  return components.size() == 1 && components[0].cycle &&
         components[0].edges == 4;
}

bool MatchingDiff::single_four_path() const {
  return components.size() == 1 && !components[0].cycle &&
         components[0].edges == 4;
}

MatchingDiff matching_diff(const MatchingGraph& a, const MatchingGraph& b) {
  MatchingDiff d;
  int m = std::max(a.m, b.m);
  std::vector<std::vector<int>> adj(m);
  std::vector<MEdge> sym;
  std::set_symmetric_difference(a.edges.begin(), a.edges.end(), b.edges.begin(),
                                b.edges.end(), std::back_inserter(sym));
  d.epsilon = static_cast<int>((a.edges.size() + b.edges.size() - sym.size()) / 2);
  for (auto [x, y] : sym) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::vector<bool> seen(m, false);
  for (int s = 0; s < m; ++s) {
    if (seen[s]) continue;
    ++d.c0;
    std::vector<int> stack{s}, verts;
    seen[s] = true;
    int deg = 0;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      verts.push_back(x);
      deg += static_cast<int>(adj[x].size());
      for (int y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
    if (verts.size() < 2) continue;
    std::sort(verts.begin(), verts.end());
    DiffComponent c;
    c.edges = deg / 2;
    c.cycle = c.edges == static_cast<int>(verts.size());
    c.vertices = verts;
    ++d.c1;
    d.c2 += static_cast<long>(verts.size()) * static_cast<long>(verts.size());
    d.components.push_back(c);
  }
  return d;
}

std::vector<MatchingGraph> crossings(const MatchingGraph& g, MEdge e, MEdge f) {
  auto [i, j] = e;
  auto [k, l] = f;
  return {with_edges(g, {e, f}, {norm(i, k), norm(j, l)}),
          with_edges(g, {e, f}, {norm(i, l), norm(j, k)})};
}

std::vector<MatchingGraph> singleton_moves(const MatchingGraph& g, MEdge e,
                                           int k) {
  auto [i, j] = e;
  return {with_edges(g, {e}, {norm(j, k)}), with_edges(g, {e}, {norm(i, k)})};
}

const char* match_status_name(MatchStatus s) {
  switch (s) {
    case MatchStatus::Found: return "found";
    case MatchStatus::NotFound: return "not-found";
    case MatchStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

MatchSearchResult matching_search(const FrameMatroid& mk, int v,
                                  const BaseSequence& s,
                                  const std::vector<MatchingGraph>& targets,
                                  long budget) {
  const MultiGraph& g = mk.graph();
  SearchSpec spec;
  spec.node_limit = budget;
  spec.goal = [&](const BaseSequence& t, int) {
    if (!is_v_reduced(g, v, t)) return false;
    MatchingGraph mg = matching_graph(g, v, t);
    return std::find(targets.begin(), targets.end(), mg) != targets.end();
  };
  PathResult r = search_path(mk, s, -1, spec);
  MatchSearchResult out;
  out.explored = r.explored;
  if (r.status == PathStatus::Found) {
    out.status = MatchStatus::Found;
    out.cert = r.cert;
    out.end = r.cert.end;
  } else {
    out.status = r.status == PathStatus::LimitHit ? MatchStatus::BudgetExceeded
                                                  : MatchStatus::NotFound;
  }
  return out;
}

MatchSearchResult pair_switch_search(const FrameMatroid& mk, int v,
                                     const BaseSequence& s, MEdge e, MEdge f,
                                     long budget) {
  MatchingGraph mg = matching_graph(mk.graph(), v, s);
  if (!mg.has(e) || !mg.has(f) || norm(e.first, e.second) == norm(f.first, f.second))
    throw Error(ErrorCode::PreconditionViolated,
                "switch needs two distinct matching edges");
  return matching_search(mk, v, s, crossings(mg, norm(e.first, e.second),
                                             norm(f.first, f.second)),
                         budget);
}

bool ReachableMatchings::contains(const MatchingGraph& g) const {
  return std::find(graphs.begin(), graphs.end(), g) != graphs.end();
}

bool ReachableMatchings::reaches(BaseSequence s) const {
  std::sort(s.begin(), s.end());
  return std::binary_search(members.begin(), members.end(), s);
}

ReachableMatchings reachable_matchings(const FrameMatroid& mk, int v,
                                       const BaseSequence& s, long budget) {
  const MultiGraph& g = mk.graph();
  std::set<std::vector<MEdge>> seen;
  auto note = [&](const BaseSequence& t) {
    if (is_v_reduced(g, v, t)) seen.insert(matching_graph(g, v, t).edges);
  };
  struct SeqHash {
    std::size_t operator()(const BaseSequence& t) const {
      return fnv1a(t.data(), t.size() * sizeof(EdgeSet));
    }
  };
  // Matching graphs ignore the order of the bases, so the search runs over
  // sorted sequences.
  auto sorted = [](BaseSequence t) {
    std::sort(t.begin(), t.end());
    return t;
  };
  ReachableMatchings out;
  std::unordered_set<BaseSequence, SeqHash> visited{sorted(s)};
  std::vector<BaseSequence> queue{sorted(s)};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    note(queue[q]);
    for (BaseSequence& t : neighbors_symmetric(mk, queue[q])) {
      t = sorted(std::move(t));
      if (visited.count(t)) continue;
      if (static_cast<long>(visited.size()) >= budget) {
        out.complete = false;
        break;
      }
      visited.insert(t);
      queue.push_back(std::move(t));
    }
    if (!out.complete) break;
  }
  out.states = static_cast<long>(visited.size());
  out.members.assign(visited.begin(), visited.end());
  std::sort(out.members.begin(), out.members.end());
  for (const auto& es : seen) {
    MatchingGraph mg;
    mg.m = size(g.incident(v));
    mg.edges = es;
    out.graphs.push_back(mg);
  }
  return out;
}

SwitchPartnerReport check_switch_partners(const FrameMatroid& mk, int v,
                                          const BaseSequence& s, long budget) {
  return check_switch_partners(matching_graph(mk.graph(), v, s),
                               reachable_matchings(mk, v, s, budget));
}

SwitchPartnerReport check_switch_partners(const MatchingGraph& mg,
                                          const ReachableMatchings& r) {
  SwitchPartnerReport rep;
  rep.complete = r.complete;
  for (MEdge e : mg.edges) {
    ++rep.edges;
    int stuck = 0;
    for (MEdge f : mg.edges) {
      if (f == e) continue;
      ++rep.pairs;
      auto cs = crossings(mg, e, f);
      if (!r.contains(cs[0]) && !r.contains(cs[1])) ++stuck;
    }
    rep.max_non_switchable = std::max(rep.max_non_switchable, stuck);
    if (stuck > 1 && r.complete && rep.violations++ == 0)
      rep.first_violation = "edge x" + std::to_string(e.first) + "x" +
                            std::to_string(e.second) + " has " +
                            std::to_string(stuck) + " non-switchable partners";
  }
  return rep;
}

const char* align_status_name(AlignStatus s) {
  switch (s) {
    case AlignStatus::Equal: return "equal";
    case AlignStatus::FourCycle: return "four-cycle";
    case AlignStatus::Other: return "other";
    case AlignStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

AlignResult align_matchings(const FrameMatroid& mk, int v,
                            const BaseSequence& s1, const BaseSequence& s2,
                            long budget) {
  const MultiGraph& g = mk.graph();
  AlignResult res;
  res.s1 = s1;
  res.s2 = s2;
  res.cert1 = empty_cert(s1);
  res.cert2 = empty_cert(s2);
  BaseSequence* cur[2] = {&res.s1, &res.s2};
  ExchangeCertificate* cert[2] = {&res.cert1, &res.cert2};

  for (bool improved = true; improved;) {
    improved = false;
    MatchingGraph mg[2] = {matching_graph(g, v, res.s1),
                           matching_graph(g, v, res.s2)};
    auto best = score(mg[0], mg[1]);
    for (int side = 0; side < 2 && !improved; ++side) {
      const MatchingGraph& here = mg[side];
      std::vector<MatchingGraph> moves;
      for (std::size_t a = 0; a < here.edges.size(); ++a) {
        for (std::size_t b = a + 1; b < here.edges.size(); ++b)
          for (auto& t : crossings(here, here.edges[a], here.edges[b]))
            moves.push_back(t);
        for (int k : here.isolated())
          for (auto& t : singleton_moves(here, here.edges[a], k))
            moves.push_back(t);
      }
      for (const MatchingGraph& t : moves) {
        auto sc = side ? score(mg[0], t) : score(t, mg[1]);
        if (sc <= best) continue;
        auto r = matching_search(mk, v, *cur[side], {t}, budget);
        if (r.status != MatchStatus::Found) continue;
        append(*cert[side], r.cert);
        *cur[side] = r.end;
        ++res.greedy_moves;
        improved = true;
        break;
      }
    }
  }

  res.diff = matching_diff(matching_graph(g, v, res.s1),
                           matching_graph(g, v, res.s2));
  if (res.diff.empty()) res.status = AlignStatus::Equal;
  else if (res.diff.single_four_cycle()) res.status = AlignStatus::FourCycle;
  if (res.status != AlignStatus::Other) return res;

  res.exhaustive = true;
  auto r1 = reachable_matchings(mk, v, res.s1, budget);
  auto r2 = reachable_matchings(mk, v, res.s2, budget);
  std::optional<std::pair<MatchingGraph, MatchingGraph>> pick;
  for (int want = 0; want < 2 && !pick; ++want)
    for (const auto& a : r1.graphs)
      for (const auto& b : r2.graphs) {
        if (pick) break;
        MatchingDiff d = matching_diff(a, b);
        if (want == 0 ? d.empty() : d.single_four_cycle()) pick = {a, b};
      }
  if (!pick) {
    res.status = r1.complete && r2.complete ? AlignStatus::Other
                                            : AlignStatus::BudgetExceeded;
    return res;
  }
  auto f1 = matching_search(mk, v, res.s1, {pick->first}, budget);
  auto f2 = matching_search(mk, v, res.s2, {pick->second}, budget);
  if (f1.status != MatchStatus::Found || f2.status != MatchStatus::Found) {
    res.status = AlignStatus::BudgetExceeded;
    return res;
  }
  append(res.cert1, f1.cert);
  append(res.cert2, f2.cert);
  res.s1 = f1.end;
  res.s2 = f2.end;
  res.diff = matching_diff(pick->first, pick->second);
  res.status = res.diff.empty() ? AlignStatus::Equal : AlignStatus::FourCycle;
  return res;
}

OptimumReport check_matching_optimum(const FrameMatroid& mk, int v,
                                     const BaseSequence& s1,
                                     const BaseSequence& s2, long budget) {
  return check_matching_optimum(reachable_matchings(mk, v, s1, budget),
                                reachable_matchings(mk, v, s2, budget));
}

OptimumReport check_matching_optimum(const ReachableMatchings& r1,
                                     const ReachableMatchings& r2) {
  OptimumReport rep;
  rep.complete = r1.complete && r2.complete;
  if (!rep.complete) return rep;
  std::pair<int, long> best{-1, -1};
  for (const auto& a : r1.graphs)
    for (const auto& b : r2.graphs) best = std::max(best, score(a, b));
  for (const auto& a : r1.graphs)
    for (const auto& b : r2.graphs) {
      if (score(a, b) != best) continue;
      ++rep.optimal_pairs;
      MatchingDiff d = matching_diff(a, b);
      if (!d.empty() && !d.single_four_cycle() && !d.single_four_path() &&
          rep.violations++ == 0)
        rep.first_violation = "optimum with " +
                              std::to_string(d.components.size()) +
                              " components, epsilon " + std::to_string(d.epsilon);
    }
  return rep;
}

}  // namespace bm

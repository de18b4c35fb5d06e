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

#include "bm/structure.h"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace bm {

namespace {

struct OffKey {
  EdgeSet a = 0, b = 0;
  bool operator==(const OffKey&) const = default;
};

struct OffHash {
  std::size_t operator()(const OffKey& k) const {
    return std::hash<EdgeSet>()(k.a * 0x9e3779b97f4a7c15ull ^ k.b);
  }
};

OffKey off(const ISelection& sel, const BasePair& p) {
  return {p.b1 & ~sel.h, p.b2 & ~sel.h};
}

bool pair_less(const BasePair& x, const BasePair& y) {
  if (x.b1 != y.b1) return lex_less(x.b1, y.b1);
  return lex_less(x.b2, y.b2);
}

std::string pair_str(const BasePair& p) {
  return "(" + to_string(p.b1) + ", " + to_string(p.b2) + ")";
}

}  // namespace

int ISelection::edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  int out = -1;
  for_each(h, [&](int e) {
    if (ends_i[e] == i && ends_j[e] == j) out = e;
  });
  return out;
}

bool ISelection::non_incident(int e, int f) const {
  auto [a, b] = ends(e);
  auto [c, d] = ends(f);
  return a != c && a != d && b != c && b != d;
}

ISelection make_selection(const VDeletionMap& map, std::vector<int> I) {
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  ISelection sel;
  sel.I = I;
  int n = map.target.graph.edge_count();
  sel.ends_i.assign(n, -1);
  sel.ends_j.assign(n, -1);
  for (int i : I)
    if (i < 0 || i >= static_cast<int>(map.v_edges.size()))
      throw Error(ErrorCode::PreconditionViolated, "index outside E(v)");
  for (std::size_t a = 0; a < I.size(); ++a)
    for (std::size_t b = a + 1; b < I.size(); ++b) {
      int id = map.hat_edge(I[a], I[b]);
      if (id < 0)
        throw Error(ErrorCode::PreconditionViolated,
                    "indices " + std::to_string(I[a]) + "," +
                        std::to_string(I[b]) + " are both loops");
      sel.h |= bit(id);
      sel.ends_i[id] = I[a];
      sel.ends_j[id] = I[b];
    }
  return sel;
}

EdgeSet f_set(const FrameMatroid& mh, const ISelection& sel, EdgeSet b) {
  if (size(b & sel.h) != 1) return 0;
  EdgeSet rest = b & ~sel.h, out = 0;
  for_each(sel.h, [&](int e) {
    if (mh.is_base(rest | bit(e))) out |= bit(e);
  });
  return out;
}

std::string IClassification::name() const {
  if (cyclic && singular) return "cyclic-and-singular";
  if (cyclic) return "strictly-cyclic";
  if (singular) return "strictly-singular";
  return "none";
}

IClassification classify_fset(const ISelection& sel, EdgeSet f) {
  IClassification c;
  const auto& I = sel.I;
  for (int i : I) {
    bool all = true;
    for (int j : I)
      if (j != i && !has(f, sel.edge(i, j))) all = false;
    if (all) c.singular = true;
  }
  if (I.size() >= 3) {
    std::vector<int> rest(I.begin() + 1, I.end());
    do {
      bool all = has(f, sel.edge(I[0], rest.front())) &&
                 has(f, sel.edge(rest.back(), I[0]));
      for (std::size_t k = 0; k + 1 < rest.size(); ++k)
        all = all && has(f, sel.edge(rest[k], rest[k + 1]));
      if (all) c.cyclic = true;
    } while (!c.cyclic && std::next_permutation(rest.begin(), rest.end()));
  }
  return c;
}

IClassification classify_I(const FrameMatroid& mh, const ISelection& sel,
                           EdgeSet b) {
  if (sel.I.size() < 3 || size(b & sel.h) != 1)
    throw Error(ErrorCode::PreconditionViolated,
                "classification needs |I| >= 3 and one trace edge");
  return classify_fset(sel, f_set(mh, sel, b));
}

bool is_viable(const ISelection& sel, const BasePair& p) {
  EdgeSet t = (p.b1 | p.b2) & sel.h;
  if (size(t) != 2)
    throw Error(ErrorCode::PreconditionViolated,
                "trace has " + std::to_string(size(t)) + " edges");
  if (!(t & ~p.b1) || !(t & ~p.b2)) return true;
  return sel.non_incident(lowest(t), lowest(t & (t - 1)));
}

std::vector<BasePair> amenable_witnesses(const FrameMatroid& mh,
                                         const ISelection& sel,
                                         const BasePair& p, int e, int f) {
  if (e == f || !has(sel.h, e) || !has(sel.h, f))
    throw Error(ErrorCode::PreconditionViolated, "targets must be two edges of h");
  OffKey o = off(sel, p);
  EdgeSet ef = bit(e) | bit(f);
  std::vector<BasePair> out;
  for (auto [t1, t2] : {std::pair{ef, EdgeSet{0}}, std::pair{EdgeSet{0}, ef},
                        std::pair{bit(e), bit(f)}, std::pair{bit(f), bit(e)}}) {
    BasePair q{o.a | t1, o.b | t2};
    if (mh.is_base(q.b1) && mh.is_base(q.b2)) out.push_back(q);
  }
  std::sort(out.begin(), out.end(), pair_less);
  return out;
}

std::optional<BasePair> amenable(const FrameMatroid& mh, const ISelection& sel,
                                 const BasePair& p, int e, int f) {
  auto w = amenable_witnesses(mh, sel, p, e, f);
  if (w.empty()) return std::nullopt;
  return w.front();
}

namespace {

struct SearchNode {
  OffKey key;
  int parent = -1;
  ArrowStep step;
};

}  // namespace

static SwitchResult arrow_search_impl(
    const FrameMatroid& mh, const ISelection& sel, const BasePair& p,
    const std::vector<std::pair<int, int>>& targets, long budget,
    std::vector<OffKey>* visited) {
  SwitchResult res;
  std::vector<SearchNode> nodes;
  std::unordered_map<OffKey, int, OffHash> index;
  nodes.push_back({off(sel, p), -1, {}});
  index.emplace(nodes[0].key, 0);
  std::vector<int> hs = elements(sel.h);

  auto finish = [&](int at, int te, int tf, const BasePair& w) {
    SwitchCertificate cert;
    cert.start = p;
    cert.target_e = te;
    cert.target_f = tf;
    cert.witness = w;
    for (int x = at; nodes[x].parent >= 0; x = nodes[x].parent)
      cert.steps.push_back(nodes[x].step);
    std::reverse(cert.steps.begin(), cert.steps.end());
    res.status = SwitchStatus::Found;
    res.cert = cert;
  };

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    BasePair cur{nodes[head].key.a, nodes[head].key.b};
    for (auto [te, tf] : targets) {
      auto w = amenable_witnesses(mh, sel, cur, te, tf);
      if (!w.empty()) {
        finish(static_cast<int>(head), te, tf, w.front());
        break;
      }
    }
    if (res.status == SwitchStatus::Found) break;
    for (std::size_t x = 0; x < hs.size(); ++x)
      for (std::size_t y = x + 1; y < hs.size(); ++y)
        for (const BasePair& a : amenable_witnesses(mh, sel, cur, hs[x], hs[y])) {
          if (!is_viable(sel, a)) continue;
          for_each(a.b1, [&](int e) {
            for_each(a.b2, [&](int f) {
              if (has(sel.h, e) && has(sel.h, f)) return;
              BasePair b{(a.b1 & ~bit(e)) | bit(f), (a.b2 & ~bit(f)) | bit(e)};
              if (!mh.is_base(b.b1) || !mh.is_base(b.b2) || !is_viable(sel, b))
                return;
              OffKey k = off(sel, b);
              if (index.count(k)) return;
              index.emplace(k, static_cast<int>(nodes.size()));
              nodes.push_back({k, static_cast<int>(head),
                               {hs[x], hs[y], a, e, f, b}});
            });
          });
        }
    if (static_cast<long>(nodes.size()) > budget) {
      res.status = SwitchStatus::BudgetExceeded;
      break;
    }
  }
  if (res.status != SwitchStatus::Found &&
      res.status != SwitchStatus::BudgetExceeded)
    res.status = SwitchStatus::NotSwitchable;
  res.states = static_cast<long>(nodes.size());
  if (visited) {
    visited->clear();
    for (const auto& n : nodes) visited->push_back(n.key);
  }
  return res;
}

SwitchResult arrow_search(const FrameMatroid& mh, const ISelection& sel,
                          const BasePair& p,
                          const std::vector<std::pair<int, int>>& targets,
                          long budget) {
  return arrow_search_impl(mh, sel, p, targets, budget, nullptr);
}

std::vector<std::pair<int, int>> crossed_matchings(const ISelection& sel,
                                                   int e) {
  if (sel.I.size() != 4 || !has(sel.h, e))
    throw Error(ErrorCode::PreconditionViolated, "needs |I| = 4 and e in h");
  auto [i, j] = sel.ends(e);
  std::vector<int> kl;
  for (int x : sel.I)
    if (x != i && x != j) kl.push_back(x);
  int k = kl[0], l = kl[1];
  return {{sel.edge(i, k), sel.edge(j, l)}, {sel.edge(i, l), sel.edge(j, k)}};
}

SwitchResult switchable(const FrameMatroid& mh, const ISelection& sel,
                        const BasePair& p, int e, int f, long budget) {
  if (sel.I.size() != 4 || !has(f_set(mh, sel, p.b1), e) ||
      !has(f_set(mh, sel, p.b2), f) || !sel.non_incident(e, f))
    throw Error(ErrorCode::PreconditionViolated,
                "switchability needs e in F(b1), f in F(b2), non-incident");
  return arrow_search(mh, sel, p, crossed_matchings(sel, e), budget);
}

bool replay_switch(const FrameMatroid& mh, const ISelection& sel,
                   const SwitchCertificate& cert) {
  auto is_pair = [&](const BasePair& q) {
    return mh.is_base(q.b1) && mh.is_base(q.b2) && !(q.b1 & q.b2);
  };
  auto trace_is = [&](const BasePair& q, int e, int f) {
    return ((q.b1 | q.b2) & sel.h) == (bit(e) | bit(f));
  };
  OffKey cur = off(sel, cert.start);
  try {
    for (const ArrowStep& s : cert.steps) {
      if (!(off(sel, s.a_prime) == cur) || !is_pair(s.a_prime) ||
          !trace_is(s.a_prime, s.c1, s.c2) || !is_viable(sel, s.a_prime))
        return false;
      if (!has(s.a_prime.b1, s.e) || !has(s.a_prime.b2, s.f)) return false;
      BasePair b{(s.a_prime.b1 & ~bit(s.e)) | bit(s.f),
                 (s.a_prime.b2 & ~bit(s.f)) | bit(s.e)};
      if (!(b == s.b_prime) || !is_pair(b) || !is_viable(sel, b)) return false;
      cur = off(sel, b);
    }
  } catch (const Error&) {
    return false;
  }
  return off(sel, cert.witness) == cur && is_pair(cert.witness) &&
         trace_is(cert.witness, cert.target_e, cert.target_f);
}

FSetExchangeReport check_exchange_preserves_fsets(const FrameMatroid& mh,
                                                  const ISelection& sel,
                                                  const BasePair& p, int e,
                                                  int f) {
  auto sw = switchable(mh, sel, p, e, f);
  if (sw.status != SwitchStatus::NotSwitchable)
    throw Error(ErrorCode::PreconditionViolated,
                "pair is switchable or the search was inconclusive");
  FSetExchangeReport rep;
  EdgeSet f1 = f_set(mh, sel, p.b1), f2 = f_set(mh, sel, p.b2);
  for_each(p.b1, [&](int x) {
    for_each(p.b2, [&](int y) {
      EdgeSet n1 = (p.b1 & ~bit(x)) | bit(y), n2 = (p.b2 & ~bit(y)) | bit(x);
      if (!mh.is_base(n1) || !mh.is_base(n2)) return;
      ++rep.exchanges;
      EdgeSet g1 = f_set(mh, sel, n1), g2 = f_set(mh, sel, n2);
      bool same = (g1 == f1 && g2 == f2) || (g1 == f2 && g2 == f1);
      if (!same && (g1 || g2) && rep.violations++ == 0)
        rep.first_violation = "pair " + pair_str(p) + " exchange " +
                              std::to_string(x) + "<->" + std::to_string(y) +
                              " gives F-sets " + to_string(g1) + ", " +
                              to_string(g2);
    });
  });
  return rep;
}

bool is_two_cycle_handcuff(const MultiGraph& g, EdgeSet c, int a, int b) {
  if (!has(c, a) || !has(c, b) || edge_components(g, c).size() != 1)
    return false;
  int base_comps = component_count(g, c);
  EdgeSet bridges = 0;
  for_each(c & ~g.loops(), [&](int e) {
    if (component_count(g, c & ~bit(e)) > base_comps) bridges |= bit(e);
  });
  auto cycles = edge_components(g, c & ~bridges);
  if (cycles.size() != 2 || !bridges || !is_path(g, bridges)) return false;
  for (EdgeSet cy : cycles)
    if (!is_simple_cycle(g, cy) || has(cy, a) == has(cy, b)) return false;
  VertexSet v1 = g.vertices_of(cycles[0]), v2 = g.vertices_of(cycles[1]);
  if (v1 & v2) return false;
  auto [x, y] = path_ends(g, bridges);
  bool joins = (has(v1, x) && has(v2, y)) || (has(v1, y) && has(v2, x));
  VertexSet inner = g.vertices_of(bridges) & ~(bit(x) | bit(y));
  return joins && !(inner & (v1 | v2));
}

const char* split_name(SeqSplit s) {
  switch (s) {
    case SeqSplit::Split: return "split";
    case SeqSplit::Fused: return "fused";
    case SeqSplit::Absent: return "absent";
  }
  return "?";
}

SeqSplit split_or_fused(const BaseSequence& s, int a, int b) {
  int pa = -1, pb = -1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (has(s[i], a)) pa = static_cast<int>(i);
    if (has(s[i], b)) pb = static_cast<int>(i);
  }
  if (pa < 0 || pb < 0) return SeqSplit::Absent;
  return pa == pb ? SeqSplit::Fused : SeqSplit::Split;
}

namespace {

int position_of(const BaseSequence& s, int e) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (has(s[i], e)) return static_cast<int>(i);
  return -1;
}

}  // namespace

BaseSequence perturb(const FrameMatroid& mh, const VDeletionMap& map,
                     const ISelection& sel, const BaseSequence& s, int a,
                     int b, int e, int f) {
  if (split_or_fused(s, a, b) != SeqSplit::Split)
    throw Error(ErrorCode::PreconditionViolated, "perturbation needs a split sequence");
  int j1 = position_of(s, a), j2 = position_of(s, b);
  if (j1 > j2) std::swap(j1, j2);
  if (((s[j1] | s[j2]) & map.hat_set) != (bit(a) | bit(b)))
    throw Error(ErrorCode::PreconditionViolated,
                "the two bases carry other new edges");
  BasePair p{s[j1], s[j2]};
  auto ws = amenable_witnesses(mh, sel, p, e, f);
  std::optional<BasePair> pick;
  for (const BasePair& w : ws)
    if (w == p && is_viable(sel, w)) pick = w;
  for (const BasePair& w : ws)
    if (!pick && is_viable(sel, w)) pick = w;
  if (!pick)
    throw Error(ErrorCode::NotAmenable,
                "no viable witness at " + std::to_string(e) + "," +
                    std::to_string(f));
  BaseSequence out = s;
  out[j1] = pick->b1;
  out[j2] = pick->b2;
  return out;
}

BaseSequence e_switch(const FrameMatroid& mh, const ISelection& sel,
                      const BaseSequence& s, int m1, int m2, long budget) {
  if (!has(sel.h, m1) || !has(sel.h, m2) || !sel.non_incident(m1, m2))
    throw Error(ErrorCode::PreconditionViolated, "switch needs a matching of I");
  auto targets = crossed_matchings(sel, m1);
  bool inconclusive = false;
  for (std::size_t j1 = 0; j1 < s.size(); ++j1)
    for (std::size_t j2 = j1 + 1; j2 < s.size(); ++j2) {
      if (size((s[j1] | s[j2]) & sel.h) != 2) continue;
      auto r = arrow_search(mh, sel, {s[j1], s[j2]}, targets, budget);
      if (r.status == SwitchStatus::BudgetExceeded) inconclusive = true;
      if (r.status != SwitchStatus::Found) continue;
      BaseSequence out = s;
      out[j1] = r.cert->witness.b1;
      out[j2] = r.cert->witness.b2;
      return out;
    }
  if (inconclusive)
    throw Error(ErrorCode::BudgetExceeded, "switch search hit its budget");
  throw Error(ErrorCode::NotSwitchable, "no position pair switches");
}

bool StructureTally::ok() const {
  return !beyond_trace.failures && !cyclic_or_singular.failures &&
         !non_amenable.failures && !modification.failures &&
         !exchange_fsets.failures && !handcuff_shape.failures;
}

void StructureTally::merge(const StructureTally& o) {
  for (auto [dst, src] :
       {std::pair{&beyond_trace, &o.beyond_trace},
        std::pair{&cyclic_or_singular, &o.cyclic_or_singular},
        std::pair{&non_amenable, &o.non_amenable},
        std::pair{&modification, &o.modification},
        std::pair{&exchange_fsets, &o.exchange_fsets},
        std::pair{&handcuff_shape, &o.handcuff_shape}}) {
    if (!dst->failures && src->failures) dst->first_failure = src->first_failure;
    dst->instances += src->instances;
    dst->failures += src->failures;
  }
  switch_found += o.switch_found;
  switch_exhausted += o.switch_exhausted;
  switch_budget += o.switch_budget;
  pairs_skipped += o.pairs_skipped;
}

namespace {

// Star of index i inside I.
EdgeSet star(const ISelection& sel, int i) {
  EdgeSet s = 0;
  for (int j : sel.I)
    if (j != i) s |= bit(sel.edge(i, j));
  return s;
}

// Edge sets of the Hamiltonian cycles on I.
std::vector<EdgeSet> ham_cycles(const ISelection& sel) {
  std::vector<EdgeSet> out;
  const auto& I = sel.I;
  std::vector<int> rest(I.begin() + 1, I.end());
  do {
    EdgeSet c = bit(sel.edge(I[0], rest.front())) |
                bit(sel.edge(rest.back(), I[0]));
    for (std::size_t k = 0; k + 1 < rest.size(); ++k)
      c |= bit(sel.edge(rest[k], rest[k + 1]));
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

void check_single_bases(const FrameMatroid& mh, const ISelection& sel,
                        StructureTally& t) {
  const auto& bs = mh.bases(true);
  auto hc = sel.I.size() >= 3 ? ham_cycles(sel) : std::vector<EdgeSet>{};
  for (EdgeSet b : bs) {
    EdgeSet tr = b & sel.h;
    if (size(tr) != 1) continue;
    EdgeSet f = f_set(mh, sel, b);
    auto tag = [&] { return "base " + to_string(b); };
    if (sel.I.size() == 3) t.beyond_trace.record((f & ~tr) != 0, tag);
    if (sel.I.size() == 4) {
      bool refined = false;
      for (EdgeSet c : hc)
        if ((c & tr) && !(c & ~f)) refined = true;
      for (int i : sel.I)
        if ((star(sel, i) & tr) && !(star(sel, i) & ~f)) refined = true;
      IClassification cl = classify_fset(sel, f);
      t.cyclic_or_singular.record((cl.cyclic || cl.singular) && refined,
                                  [&] { return tag() + " F " + to_string(f); });
    }
    // Base modification: b - e + e2 a base with nonempty F.
    int eij = lowest(tr);
    for_each(b, [&](int e) {
      for_each(mh.ground() & ~b, [&](int e2) {
        EdgeSet b2 = (b & ~bit(e)) | bit(e2);
        if (!mh.is_base(b2)) return;
        EdgeSet f2 = f_set(mh, sel, b2);
        if (!f2) return;
        EdgeSet lost = f & ~f2;
        bool ok = true;
        if (lost && !mh.is_base((b & ~bit(eij)) | bit(e2))) ok = false;
        for_each(lost, [&](int x) {
          if (!mh.is_base((b & ~bit(e)) | bit(x))) ok = false;
        });
        t.modification.record(ok, [&] {
          return tag() + " e " + std::to_string(e) + " e' " + std::to_string(e2);
        });
      });
    });
  }
}

}  // namespace

StructureTally check_structure(const FrameMatroid& mh, const ISelection& sel,
                               long pair_limit, long budget) {
  StructureTally t;
  check_single_bases(mh, sel, t);
  if (sel.I.size() != 4) return t;

  // The three perfect matchings of I.
  const auto& I = sel.I;
  std::vector<std::pair<int, int>> matchings = {
      {sel.edge(I[0], I[1]), sel.edge(I[2], I[3])},
      {sel.edge(I[0], I[2]), sel.edge(I[1], I[3])},
      {sel.edge(I[0], I[3]), sel.edge(I[1], I[2])}};
  auto mset = [&](int k) {
    return bit(matchings[k].first) | bit(matchings[k].second);
  };

  // Bases meeting h once are r | e with r off h and e in F(r); group them
  // by r.  Only the single-edge witnesses have rank size, so amenability of
  // such a pair at (x, y) is x in one F-set and y in the other, and every
  // check below but the last two depends on the two off-h parts only.
  std::vector<EdgeSet> rests, fs;
  std::vector<IClassification> cls;
  {
    std::unordered_map<EdgeSet, int> seen_rest;
    for (EdgeSet b : mh.bases(true))
      if (size(b & sel.h) == 1 && seen_rest.emplace(b & ~sel.h, 0).second) {
        rests.push_back(b & ~sel.h);
        fs.push_back(f_set(mh, sel, b));
        cls.push_back(classify_fset(sel, fs.back()));
      }
  }
  auto amenable_at = [](EdgeSet f1, EdgeSet f2, int x, int y) {
    return (has(f1, x) && has(f2, y)) || (has(f1, y) && has(f2, x));
  };

  // Switchability is constant on components of the arrow relation over
  // off-h states; cache per matching.
  std::vector<std::unordered_map<OffKey, SwitchStatus, OffHash>> cache(3);
  std::vector<std::vector<std::pair<int, int>>> crossed(mh.edge_count());
  for_each(sel.h, [&](int e) { crossed[e] = crossed_matchings(sel, e); });
  long pairs = 0;
  for (std::size_t i1 = 0; i1 < rests.size(); ++i1)
    for (std::size_t i2 = 0; i2 < rests.size(); ++i2) {
      EdgeSet r1 = rests[i1], r2 = rests[i2];
      if (r1 & r2) continue;
      EdgeSet f1 = fs[i1], f2 = fs[i2];
      // Disjoint base pairs (r1 | e1, r2 | e2): e1 in f1, e2 in f2, e1 != e2.
      long mult = static_cast<long>(size(f1)) * size(f2) - size(f1 & f2);
      if (!mult) continue;
      if (pairs + mult > pair_limit) {
        t.pairs_skipped += mult;
        continue;
      }
      pairs += mult;
      int e1 = lowest(f1);
      EdgeSet rest2 = f2 & ~bit(e1);
      BasePair rep = rest2 ? BasePair{r1 | bit(e1), r2 | bit(lowest(rest2))}
                           : BasePair{r1 | bit(lowest(f1 & ~f2)), r2 | f2};
      auto tag = [&] { return "pair " + pair_str(rep); };

      for (int k = 0; k < 3; ++k) {
        int o1 = (k + 1) % 3, o2 = (k + 2) % 3;
        bool am1 = amenable_at(f1, f2, matchings[o1].first, matchings[o1].second);
        bool am2 = amenable_at(f1, f2, matchings[o2].first, matchings[o2].second);
        if (am1 || am2) continue;
        const IClassification &c1 = cls[i1], &c2 = cls[i2];
        bool sing = false;
        for (int i : I)
          if (f1 == star(sel, i) && f2 == star(sel, i)) sing = true;
        sing = sing && c1.strictly_singular() && c2.strictly_singular();
        EdgeSet x = mset(k) | mset(o1), y = mset(k) | mset(o2);
        bool cyc = c1.strictly_cyclic() && c2.strictly_cyclic() &&
                   ((f1 == x && f2 == y) || (f1 == y && f2 == x));
        t.non_amenable.record(
            sing || cyc,
            [&] {
              return tag() + " matching " + std::to_string(k) + " F " + to_string(f1) + ", " +
                     to_string(f2);
            },
            mult);
      }

      for (int k = 0; k < 3; ++k) {
        for (auto [x, y] : {matchings[k], std::pair{matchings[k].second,
                                                     matchings[k].first}}) {
          if (!has(f1, x) || !has(f2, y)) continue;
          // Zero steps: already amenable at a crossed target.
          bool direct = false;
          for (auto [te, tf] : crossed[x]) direct = direct || amenable_at(f1, f2, te, tf);
          if (direct) {
            t.switch_found += mult;
            continue;
          }
          BasePair p{r1 | bit(x), r2 | bit(y)};
          OffKey key = off(sel, p);
          SwitchStatus st;
          auto it = cache[k].find(key);
          if (it != cache[k].end()) {
            st = it->second;
          } else {
            std::vector<OffKey> seen;
            auto r = arrow_search_impl(mh, sel, p, crossed[x], budget, &seen);
            st = r.status;
            if (st != SwitchStatus::BudgetExceeded)
              for (const OffKey& s : seen) cache[k].emplace(s, st);
          }
          if (st == SwitchStatus::Found) {
            t.switch_found += mult;
            continue;
          }
          if (st == SwitchStatus::BudgetExceeded) {
            t.switch_budget += mult;
            continue;
          }
          t.switch_exhausted += mult;
          for_each(f1, [&](int e1) {
            for_each(f2 & ~bit(e1), [&](int e2) {
              EdgeSet b1 = r1 | bit(e1), b2 = r2 | bit(e2);
              BasePair q{b1, b2};
              // Exchanges keep the F-set pair or empty both.
              bool ok = true;
              for_each(b1, [&](int e) {
                for_each(b2, [&](int f) {
                  EdgeSet n1 = (b1 & ~bit(e)) | bit(f), n2 = (b2 & ~bit(f)) | bit(e);
                  if (!mh.is_base(n1) || !mh.is_base(n2)) return;
                  EdgeSet g1 = f_set(mh, sel, n1), g2 = f_set(mh, sel, n2);
                  bool same = (g1 == f1 && g2 == f2) || (g1 == f2 && g2 == f1);
                  if (!same && (g1 || g2)) ok = false;
                });
              });
              t.exchange_fsets.record(ok, [&] {
                return "pair " + pair_str(q) + " targets " + std::to_string(x) + "," +
                       std::to_string(y);
              });
              if (e1 == x && e2 == y) {
                EdgeSet c1 = fundamental_circuit(mh, b1, y).edges;
                EdgeSet c2 = fundamental_circuit(mh, b2, x).edges;
                const MultiGraph& g = mh.graph();
                t.handcuff_shape.record(
                    is_two_cycle_handcuff(g, c1, x, y) && is_two_cycle_handcuff(g, c2, x, y),
                    [&] {
                      return "pair " + pair_str(q) + " circuits " + to_string(c1) + ", " +
                             to_string(c2);
                    });
              }
            });
          });
        }
      }
    }
  return t;
}

}  // namespace bm

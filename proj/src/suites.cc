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

#include "bm/suites.h"

#include <algorithm>
#include <functional>
#include <random>

#include "bm/oracle.h"
#include "bm/reduction.h"
#include "bm/structure.h"
#include "json.hpp"

namespace bm {
namespace {

using Run = std::function<void(const Instance&, const SuiteOptions&, SuiteRecord&)>;

std::string seq_string(const BaseSequence& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + to_string(s[i]);
  return out + ")";
}

std::mt19937_64 instance_rng(const Instance& inst, const SuiteOptions& o,
                             const char* suite) {
  std::uint64_t h = fnv1a(inst.name.data(), inst.name.size(), o.seed);
  return std::mt19937_64(fnv1a(suite, std::char_traits<char>::length(suite), h));
}

// k random bases, then a random exchange walk and a shuffle.
std::pair<BaseSequence, BaseSequence> random_pair(std::mt19937_64& rng,
                                                  const FrameMatroid& m, int k) {
  const auto& bs = m.bases();
  std::uniform_int_distribution<std::size_t> pick(0, bs.size() - 1);
  BaseSequence s1;
  for (int i = 0; i < k; ++i) s1.push_back(bs[pick(rng)]);
  BaseSequence s2 = s1;
  for (int step = 0; step < 8; ++step) {
    auto nb = neighbors_symmetric(m, s2);
    if (nb.empty()) break;
    s2 = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
  }
  std::shuffle(s2.begin(), s2.end(), rng);
  return {s1, s2};
}

void keep(SuiteRecord& r, const SuiteOptions& o, const BiasedGraph& bg,
          const std::string& name, const ExchangeCertificate& cert) {
  if (!o.keep_certificates) return;
  Instance ci;
  ci.name = name;
  ci.bg = bg;
  r.certificates.push_back({std::move(ci), cert});
}

void run_axioms(const Instance& inst, const SuiteOptions&, SuiteRecord& r) {
  for (MatroidKind kind : {MatroidKind::Frame, MatroidKind::Lift}) {
    const std::string tag = kind == MatroidKind::Frame ? "frame" : "lift";
    FrameMatroid m(inst.bg, kind);
    if (m.edge_count() > oracle::kOracleLimit) {
      r.status = SuiteStatus::Skip;
      r.detail = "more than 12 edges";
      return;
    }
    AxiomReport ax = check_base_axioms(m);
    r.count(tag + "_bases", static_cast<long>(m.bases().size()));
    r.count(tag + "_base_pairs", ax.base_pairs);
    r.count(tag + "_circuit_pairs", ax.circuit_pairs);
    if (!ax.ok()) r.fail(tag + ": " + ax.first_failure);
    if (oracle::oracle_bases(m) != m.bases()) r.fail(tag + ": base list differs from oracle");
    std::vector<EdgeSet> cs;
    for (const Circuit& c : circuits(m)) cs.push_back(c.edges);
    std::sort(cs.begin(), cs.end(), LexLess());
    auto oc = oracle::oracle_circuits(m);
    std::sort(oc.begin(), oc.end(), LexLess());
    r.count(tag + "_circuits", static_cast<long>(cs.size()));
    if (cs != oc) r.fail(tag + ": circuit list differs from oracle");
  }
}

void run_specialization(const Instance& inst, const SuiteOptions&, SuiteRecord& r) {
  const MultiGraph& g = inst.bg.graph;
  const bool all = inst.bg.balance == graphic_bias(g).balance;
  const bool none = inst.bg.balance.dimension() == 0;
  if (!all && !none) {
    r.status = SuiteStatus::Skip;
    r.detail = "class is neither all cycles nor empty";
    return;
  }
  if (g.edge_count() > oracle::kOracleLimit) {
    r.status = SuiteStatus::Skip;
    r.detail = "more than 12 edges";
    return;
  }
  FrameMatroid frame(inst.bg, MatroidKind::Frame), lift(inst.bg, MatroidKind::Lift);
  if (all) {
    auto trees = spanning_trees(g);
    std::sort(trees.begin(), trees.end(), LexLess());
    long long mt = oracle::matrix_tree_count(g);
    r.count("spanning_trees", static_cast<long>(trees.size()));
    if (frame.bases() != trees) r.fail("frame bases differ from spanning trees");
    if (lift.bases() != trees) r.fail("lift bases differ from spanning trees");
    if (static_cast<long long>(trees.size()) != mt)
      r.fail("matrix-tree count " + std::to_string(mt));
  }
  if (none) {
    // Bicircular: every component a tree or unicyclic, maximal by size.
    std::vector<EdgeSet> scan;
    const EdgeSet ground = g.all_edges();
    int best = 0;
    for (EdgeSet s = 0;; s = (s - ground) & ground) {
      bool ok = true;
      for (EdgeSet c : edge_components(g, s)) {
        int nv = size(g.vertices_of(c));
        if (size(c) > nv) ok = false;
      }
      if (ok) {
        if (size(s) > best) best = size(s), scan.clear();
        if (size(s) == best) scan.push_back(s);
      }
      if (s == ground) break;
    }
    std::sort(scan.begin(), scan.end(), LexLess());
    r.count("bicircular_bases", static_cast<long>(scan.size()));
    if (frame.bases() != scan) r.fail("frame bases differ from bicircular scan");
  }
}

void run_linearity(const Instance& inst, const SuiteOptions&, SuiteRecord& r) {
  const MultiGraph& g = inst.bg.graph;
  if (g.edge_count() > kThetaCheckLimit) {
    r.status = SuiteStatus::Skip;
    r.detail = "more than 14 edges";
    return;
  }
  std::vector<SimpleCycle> listed =
      inst.explicit_cycles ? *inst.explicit_cycles : balanced_cycles(inst.bg);
  r.count("balanced_cycles", static_cast<long>(listed.size()));
  auto th = check_theta_property(g, listed);
  if (!th.ok)
    r.fail("theta " + to_string(th.witness->c1) + " " + to_string(th.witness->c2) +
           " " + to_string(th.witness->c3));
  auto lin = check_linearity(g, listed);
  if (!lin.ok) r.fail("span contains unlisted cycle " + to_string(*lin.missing));
}

void tally_into(SuiteRecord& r, const std::string& key, const LemmaTally& t) {
  r.count(key, t.instances);
  if (t.failures) r.fail(key + ": " + t.first_failure);
}

void run_cycle_lemmas(const Instance& inst, const SuiteOptions&, SuiteRecord& r) {
  if (inst.bg.graph.edge_count() > kCycleLemmaLimit) {
    r.status = SuiteStatus::Skip;
    r.detail = "more than 12 edges";
    return;
  }
  auto rep = cycle_lemma_harness(inst.bg);
  tally_into(r, "tree_path_union", rep.tree_path_union);
  tally_into(r, "unbalanced_cotree", rep.unbalanced_cotree);
  tally_into(r, "shared_path", rep.shared_path);
}

bool deletable(const MultiGraph& g, int v) {
  return g.vertex_count() >= 2 && g.incident_count(v) <= kVDeleteIncidenceLimit;
}

void run_vdeletion(const Instance& inst, const SuiteOptions&, SuiteRecord& r) {
  long vertices = 0, cycles = 0, checked = 0;
  for (int v = 0; v < inst.bg.graph.vertex_count(); ++v) {
    if (!deletable(inst.bg.graph, v)) continue;
    auto rep = check_unbalanced_preservation(inst.bg, v);
    ++vertices;
    cycles += rep.cycles;
    checked += rep.checked;
    if (!rep.ok()) r.fail("v=" + std::to_string(v) + ": " + rep.first_violation);
  }
  r.count("vertices", vertices);
  r.count("cycles", cycles);
  r.count("checked", checked);
}

void run_pullback(const Instance& inst, const SuiteOptions&, SuiteRecord& r) {
  FrameMatroid m(inst.bg, MatroidKind::Frame);
  if (m.edge_count() > kCircuitLimit) {
    r.status = SuiteStatus::Skip;
    r.detail = "more than 12 edges";
    return;
  }
  long vertices = 0, dropped = 0, hat_bases = 0, covers = 0, refined = 0;
  long dropped_base_failures = 0, dropped_cover_failures = 0;
  for (int v = 0; v < inst.bg.graph.vertex_count(); ++v) {
    if (!deletable(inst.bg.graph, v)) continue;
    auto map = v_delete(inst.bg, v);
    const bool scoped = map.dropped_balanced_loops != 0;
    ++(scoped ? dropped : vertices);
    const std::string at = "v=" + std::to_string(v) + ": ";
    for (EdgeSet bh : map.hat_matroid.bases(true)) {
      bool empty = base_set_pullback(map, m, bh).empty();
      if (scoped) {
        dropped_base_failures += empty;
        continue;
      }
      ++hat_bases;
      if (empty) r.fail(at + "empty pull-back of " + to_string(bh));
    }
    for (EdgeSet b : m.bases()) {
      bool ok = false;
      try {
        auto cert = cover_certificate(map, m, b);
        ok = in_base_set_pullback(map, m, cert.bhat, b) &&
             (!cert.refinement_applicable || cert.refinement_honoured);
        if (!scoped) refined += cert.refinement_applicable;
      } catch (const Error&) {
        ok = false;
      }
      if (scoped) {
        dropped_cover_failures += !ok;
        continue;
      }
      ++covers;
      if (!ok) r.fail(at + "no cover for " + to_string(b));
    }
  }
  r.count("vertices", vertices);
  r.count("hat_bases", hat_bases);
  r.count("covers", covers);
  r.count("refinements", refined);
  r.count("dropped_loop_vertices", dropped);
  r.count("dropped_base_failures", dropped_base_failures);
  r.count("dropped_cover_failures", dropped_cover_failures);
}

void run_structure(const Instance& inst, const SuiteOptions& o, SuiteRecord& r) {
  StructureTally all;
  long selections = 0, dropped = 0, guarded = 0;
  const MultiGraph& g = inst.bg.graph;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!deletable(g, v) || g.incident_count(v) < 3) continue;
    auto map = v_delete(inst.bg, v);
    if (map.dropped_balanced_loops) {
      ++dropped;
      continue;
    }
    if (map.target.graph.edge_count() > o.structure_max_hat_edges) {
      ++guarded;
      continue;
    }
    const int mv = static_cast<int>(map.v_edges.size());
    for (int isize = 3; isize <= 4; ++isize) {
      std::vector<bool> choose(mv, false);
      std::fill(choose.begin(), choose.begin() + std::min(isize, mv), true);
      if (mv < isize) continue;
      do {
        std::vector<int> I;
        int loops = 0;
        for (int i = 0; i < mv; ++i)
          if (choose[i]) {
            I.push_back(i);
            loops += has(g.loops(), map.v_edges[i]);
          }
        if (loops > 1) continue;
        auto sel = make_selection(map, I);
        all.merge(check_structure(map.hat_matroid, sel, o.structure_pair_limit,
                                  o.switch_budget));
        ++selections;
      } while (std::prev_permutation(choose.begin(), choose.end()));
    }
  }
  r.count("selections", selections);
  r.count("dropped_loop_vertices", dropped);
  r.count("guarded_vertices", guarded);
  tally_into(r, "beyond_trace", all.beyond_trace);
  tally_into(r, "cyclic_or_singular", all.cyclic_or_singular);
  tally_into(r, "non_amenable", all.non_amenable);
  tally_into(r, "modification", all.modification);
  tally_into(r, "exchange_fsets", all.exchange_fsets);
  tally_into(r, "handcuff_shape", all.handcuff_shape);
  r.count("switch_found", all.switch_found);
  r.count("switch_exhausted", all.switch_exhausted);
  r.count("switch_budget", all.switch_budget);
  r.count("pairs_skipped", all.pairs_skipped);
  if ((all.switch_budget || all.pairs_skipped || guarded) && r.status == SuiteStatus::Pass) {
    r.status = SuiteStatus::Limit;
    r.detail = all.switch_budget ? "switch search budget exhausted"
               : all.pairs_skipped ? "base pair limit reached"
                                   : "derived graph above the edge guard";
  }
}

void run_reduction(const Instance& inst, const SuiteOptions& o, SuiteRecord& r) {
  FrameMatroid m(inst.bg, MatroidKind::Frame);
  if (m.rank() == 0) {
    r.status = SuiteStatus::Skip;
    r.detail = "rank 0";
    return;
  }
  auto rng = instance_rng(inst, o, "reduction");
  long pipelines = 0, lemma_moves = 0, fallbacks = 0, exhaustive = 0, four = 0;
  long partner_edges = 0, max_partners = 0, optimum_pairs = 0;
  for (int k = 2; k <= 3; ++k)
    for (int p = 0; p < o.reduction_pairs; ++p) {
      auto [s1, s2] = random_pair(rng, m, k);
      const std::string at = "k=" + std::to_string(k) + " " + seq_string(s1) + " ~ " +
                             seq_string(s2) + ": ";
      auto lift = build_gkappa(m, s1, s2);
      const MultiGraph& gk = lift.dup.kappa.graph;
      if (gk.edge_count() > kBaseEnumerationLimit) continue;
      int v = min_degree_vertex(gk);
      if (p % 2)
        for (int u = 0; u < gk.vertex_count(); ++u)
          if (gk.degree(u) <= 2 * k && gk.degree(u) > gk.degree(v)) v = u;
      try {
        auto r1 = v_reduce(lift.mk, v, lift.s1, o.reduction_budget);
        auto r2 = v_reduce(lift.mk, v, lift.s2, o.reduction_budget);
        for (const auto* rr : {&r1, &r2}) {
          if (!rr->ok || !is_v_reduced(gk, v, rr->out)) r.fail(at + "not v-reduced");
          auto rp = replay(lift.mk, rr->cert);
          if (!rp.ok) r.fail(at + "v-reduce certificate: " + rp.error);
          lemma_moves += rr->lemma_moves;
          fallbacks += rr->fallbacks;
        }
        keep(r, o, lift.dup.kappa, inst.name + "-kappa", r1.cert);
        auto al = align_matchings(lift.mk, v, r1.out, r2.out, o.reduction_budget);
        if (al.status == AlignStatus::BudgetExceeded) throw Error(ErrorCode::BudgetExceeded, "align");
        if (al.status != AlignStatus::Equal && al.status != AlignStatus::FourCycle)
          r.fail(at + "alignment " + align_status_name(al.status));
        for (const auto* c : {&al.cert1, &al.cert2}) {
          auto rp = replay(lift.mk, *c);
          if (!rp.ok) r.fail(at + "alignment certificate: " + rp.error);
        }
        keep(r, o, lift.dup.kappa, inst.name + "-kappa", al.cert1);
        exhaustive += al.exhaustive;
        four += al.status == AlignStatus::FourCycle;
        auto reach1 = reachable_matchings(lift.mk, v, r1.out, o.reduction_budget);
        // Equal components give equal reachable sets.
        auto reach2 = reach1.reaches(r2.out)
                          ? reach1
                          : reachable_matchings(lift.mk, v, r2.out, o.reduction_budget);
        if (!reach1.complete || !reach2.complete)
          throw Error(ErrorCode::BudgetExceeded, "reachable matchings");
        for (const auto& [s, reach] : {std::pair{&r1.out, &reach1}, std::pair{&r2.out, &reach2}}) {
          auto sp = check_switch_partners(matching_graph(gk, v, *s), *reach);
          if (!sp.ok()) r.fail(at + sp.first_violation);
          partner_edges += sp.edges;
          max_partners = std::max<long>(max_partners, sp.max_non_switchable);
        }
        auto opt = check_matching_optimum(reach1, reach2);
        if (!opt.ok()) r.fail(at + opt.first_violation);
        optimum_pairs += opt.optimal_pairs;
        ++pipelines;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        if (r.status == SuiteStatus::Pass) {
          r.status = SuiteStatus::Limit;
          r.detail = at + e.what();
        }
      }
    }
  r.count("pipelines", pipelines);
  r.count("lemma_moves", lemma_moves);
  r.count("fallbacks", fallbacks);
  r.count("exhaustive_alignments", exhaustive);
  r.count("four_cycles", four);
  r.count("matching_edges", partner_edges);
  r.count("max_non_switchable", max_partners);
  r.count("optimal_pairs", optimum_pairs);
}

void run_white(const Instance& inst, const SuiteOptions& o, SuiteRecord& r) {
  FrameMatroid m(inst.bg, MatroidKind::Frame);
  for (int k = 2; k <= o.white_max_k; ++k) {
    const std::string tag = "k" + std::to_string(k) + "_";
    long checked = 0, disagree = 0;
    WhiteOptions wo;
    wo.state_limit = o.white_state_limit;
    wo.exact_diameter_limit = o.white_exact_diameter_limit;
    wo.class_limit = o.connectivity_class_limit;
    wo.on_class = [&](const std::vector<BaseSequence>& seqs, bool connected) {
      ++checked;
      if (oracle::oracle_connectivity(m, seqs) != connected) ++disagree;
    };
    try {
      auto rep = white_verify(m, k, wo);
      r.count(tag + "tuples", rep.tuples);
      r.count(tag + "classes", rep.classes);
      r.count(tag + "largest_class", rep.largest_class);
      r.count(tag + (rep.diameter_exact ? "max_diameter" : "diameter_lower_bound"),
              rep.max_diameter);
      r.count(tag + "oracle_classes", checked);
      if (rep.counterexamples)
        r.fail(tag + "counterexample " + seq_string(rep.counterexample->first) + " / " +
               seq_string(rep.counterexample->second));
      if (disagree) r.fail(tag + "oracle disagrees on " + std::to_string(disagree) + " classes");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SizeExceeded) throw;
      if (r.status == SuiteStatus::Pass) {
        r.status = SuiteStatus::Limit;
        r.detail = tag + e.what();
      }
    }
  }
}

void run_extended(const Instance& inst, const SuiteOptions& o, SuiteRecord& r) {
  FrameMatroid m(inst.bg, MatroidKind::Frame);
  const MultiGraph& g = inst.bg.graph;
  long eligible = 0, states = 0;
  for (int k = 1; k <= o.extended_max_k; ++k) {
    if (g.edge_count() != k * m.rank() + 1) continue;
    for (int u = 0; u < g.vertex_count(); ++u) {
      if (g.degree(u) != 2 * k + 2) continue;
      auto rep = extended_verify(m, u, k);
      ++eligible;
      states += rep.states;
      if (!rep.connected())
        r.fail("k=" + std::to_string(k) + " u=" + std::to_string(u) + ": " +
               std::to_string(rep.components) + " components");
    }
  }
  if (!eligible) {
    r.status = SuiteStatus::Skip;
    r.detail = "no vertex meets d(u) = 2k+2 with |E| = k*r+1";
  }
  r.count("eligible", eligible);
  r.count("states", states);
}

void run_two_exchange(const Instance& inst, const SuiteOptions&, SuiteRecord& r) {
  FrameMatroid m(inst.bg, MatroidKind::Frame);
  if (m.rank() < 2) {
    r.status = SuiteStatus::Skip;
    r.detail = "rank below 2";
    return;
  }
  long triples = 0;
  const auto& bs = m.bases();
  for (EdgeSet b1 : bs)
    for (EdgeSet b2 : bs) {
      auto el = elements(b1);
      for (std::size_t a = 0; a < el.size(); ++a)
        for (std::size_t c = a + 1; c < el.size(); ++c) {
          EdgeSet a1 = bit(el[a]) | bit(el[c]);
          ++triples;
          auto x = serial_exchange_search(m, b1, b2, a1);
          if (!x || !is_serial_exchange(m, b1, b2, *x))
            r.fail("no witness for " + to_string(a1) + " in " + to_string(b1) + ", " +
                   to_string(b2));
        }
    }
  r.count("triples", triples);
}

void run_certificates(const Instance& inst, const SuiteOptions& o, SuiteRecord& r) {
  FrameMatroid m(inst.bg, MatroidKind::Frame);
  auto rng = instance_rng(inst, o, "certificates");
  std::uint64_t gh = graph_hash(inst.bg.graph);
  long paths = 0, moves = 0, telescoped = 0;
  for (int p = 0; p < o.certificate_paths; ++p) {
    auto [s1, s2] = random_pair(rng, m, 2);
    auto res = exchange_path(m, s1, s2);
    if (res.status != PathStatus::Found) {
      r.fail("no path " + seq_string(s1) + " ~ " + seq_string(s2));
      continue;
    }
    ++paths;
    moves += static_cast<long>(res.cert.moves.size());
    auto rp = replay(m, res.cert);
    if (!rp.ok) r.fail("replay: " + rp.error);
    auto [back, h] = parse_certificate(serialize_certificate(res.cert, gh));
    auto rp2 = replay(m, back);
    if (h != gh || !rp2.ok) r.fail("round trip replay: " + rp2.error);
    auto bin = binomial_certificate(res.cert);
    telescoped += bin.telescopes;
    if (!bin.telescopes) r.fail("binomial relations do not telescope");
    keep(r, o, inst.bg, inst.name, res.cert);
  }
  r.count("paths", paths);
  r.count("moves", moves);
  r.count("telescoped", telescoped);
}

struct Suite {
  const char* name;
  Run run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"axioms", run_axioms},
      {"specialization", run_specialization},
      {"linearity", run_linearity},
      {"cycle_lemmas", run_cycle_lemmas},
      {"vdeletion", run_vdeletion},
      {"pullback", run_pullback},
      {"structure", run_structure},
      {"reduction", run_reduction},
      {"white", run_white},
      {"extended", run_extended},
      {"two_exchange", run_two_exchange},
      {"certificates", run_certificates},
  };
  return all;
}

}  // namespace

const char* suite_status_name(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::Pass: return "pass";
    case SuiteStatus::Fail: return "fail";
    case SuiteStatus::Skip: return "skip";
    case SuiteStatus::Limit: return "limit";
  }
  return "?";
}

void SuiteRecord::count(const std::string& key, long n) {
  for (auto& [k, v] : counts)
    if (k == key) {
      v += n;
      return;
    }
  counts.emplace_back(key, n);
}

long SuiteRecord::get(const std::string& key) const {
  for (const auto& [k, v] : counts)
    if (k == key) return v;
  return 0;
}

void SuiteRecord::fail(const std::string& what) {
  if (status != SuiteStatus::Fail) detail = what;
  status = SuiteStatus::Fail;
}

std::string SuiteRecord::json_line() const {
  nlohmann::ordered_json j;
  j["instance"] = instance;
  j["suite"] = suite;
  j["status"] = suite_status_name(status);
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : counts) c[k] = v;
  j["counts"] = c;
  if (!detail.empty()) j["detail"] = detail;
  return j.dump();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.name);
    return out;
  }();
  return names;
}

std::vector<SuiteRecord> run_suites(const Instance& inst, const SuiteOptions& opts) {
  std::vector<SuiteRecord> out;
  for (const auto& s : suites()) {
    if (!opts.only.empty() && !opts.only.count(s.name)) continue;
    SuiteRecord r;
    r.instance = inst.name;
    r.suite = s.name;
    try {
      s.run(inst, opts, r);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SizeExceeded) {
        r.status = SuiteStatus::Skip;
        r.detail = e.what();
      } else {
        r.fail(e.what());
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace bm

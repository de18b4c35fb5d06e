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

#include "bm/cli.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "bm/corpus.h"
#include "bm/instance.h"
#include "bm/oracle.h"
#include "doctest.h"
#include "fixtures.h"

using namespace bm;
namespace fs = std::filesystem;
using bm::testing::k4;
using bm::testing::parallel;
using bm::testing::triangle_pendant;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("bm_cli_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

std::string write_bg(const TempDir& d, const std::string& name, const BiasedGraph& bg,
                     MatroidKind kind = MatroidKind::Frame) {
  Instance inst;
  inst.name = name;
  inst.bg = bg;
  inst.kind = kind;
  std::string path = d.file(name + ".json");
  write_instance(path, inst);
  return path;
}

const char* kK4Edges = R"("vertices": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]])";

// Two triangles of K4 sharing edge 01 whose sum, a 4-cycle, is left out.
std::string nonlinear_k4() {
  return std::string("{") + kK4Edges +
         R"(, "bias": {"kind": "explicit", "cycles": [[0,1,3],[0,2,4]]}, "matroid": "frame"})";
}

// Canonical form of an edge multiset: least sorted code list over vertex
// permutations.
std::vector<int> canonical_codes(int n, const std::vector<Edge>& es) {
  std::vector<int> perm(n), best;
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> codes;
    for (const Edge& e : es) {
      int a = perm[e.u], b = perm[e.v];
      codes.push_back(std::min(a, b) * 8 + std::max(a, b));
    }
    std::sort(codes.begin(), codes.end());
    if (best.empty() || codes < best) best = codes;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool connected_edges(int n, const std::vector<Edge>& es) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
  for (const Edge& e : es) p[find(e.u)] = find(e.v);
  for (int v = 1; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

// Isomorphism classes of connected multigraphs by brute force over edge
// multisets.
long brute_graph_count(int n, int m) {
  std::vector<Edge> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) pairs.push_back({a, b});
  std::set<std::vector<int>> seen;
  std::vector<Edge> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == m) {
      if (connected_edges(n, cur)) seen.insert(canonical_codes(n, cur));
      return;
    }
    for (std::size_t i = from; i < pairs.size(); ++i) {
      cur.push_back(pairs[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return static_cast<long>(seen.size());
}

// Orbits of classes under all edge bijections induced by vertex
// automorphisms, by direct enumeration.
long exact_class_orbits(const MultiGraph& g) {
  int m = g.edge_count();
  std::vector<std::vector<int>> images;
  for (const auto& p : vertex_automorphisms(g)) {
    std::vector<int> img(m, -1);
    std::vector<bool> used(m, false);
    std::function<void(int)> rec = [&](int e) {
      if (e == m) {
        images.push_back(img);
        return;
      }
      int a = p[g.edge(e).u], b = p[g.edge(e).v];
      for (int f = 0; f < m; ++f) {
        int c = g.edge(f).u, d = g.edge(f).v;
        if (used[f] || std::min(a, b) != std::min(c, d) || std::max(a, b) != std::max(c, d))
          continue;
        used[f] = true;
        img[e] = f;
        rec(e + 1);
        used[f] = false;
      }
    };
    rec(0);
  }
  std::set<std::vector<EdgeSet>> orbits;
  for (const LinearClass& w : cycle_spanned_classes(g)) {
    std::vector<EdgeSet> best;
    for (const auto& img : images) {
      std::vector<EdgeSet> rows;
      for (EdgeSet r : w.reduced_basis()) {
        EdgeSet x = 0;
        for_each(r, [&](int e) { x |= bit(img[e]); });
        rows.push_back(x);
      }
      auto b = LinearClass(rows).reduced_basis();
      if (best.empty() || b < best) best = b;
    }
    orbits.insert(best);
  }
  return static_cast<long>(orbits.size());
}

bool same_edges(const MultiGraph& g, const std::vector<Edge>& es) {
  if (g.edge_count() != static_cast<int>(es.size())) return false;
  for (int e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).u != es[e].u || g.edge(e).v != es[e].v) return false;
  return true;
}

}  // namespace

TEST_CASE("instance files round-trip for random biased graphs") {
  std::mt19937_64 rng(20261014);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    int m = 1 + static_cast<int>(rng() % 9);
    auto g = bm::testing::random_multigraph(rng, n, m, true, trial % 2 == 0);
    Instance inst;
    inst.name = "r" + std::to_string(trial);
    inst.bg = bm::testing::random_bias(rng, g, trial % 3 == 0);
    inst.kind = trial % 4 == 0 ? MatroidKind::Lift : MatroidKind::Frame;
    const std::string text = emit_instance(inst);
    Instance back = parse_instance(text);
    CHECK(same_instance(back, inst));
    CHECK(emit_instance(back) == text);
  }
}

TEST_CASE("classes not spanned by simple cycles round-trip as rows") {
  // Two copies of a loop whose sum is balanced, as in parallel-copy lifts.
  Instance inst;
  inst.name = "copies";
  inst.bg = {MultiGraph(2, {{0, 0}, {0, 0}, {0, 1}}), LinearClass({bit(0) | bit(1)})};
  const std::string text = emit_instance(inst);
  CHECK(text.find("\"rows\"") != std::string::npos);
  CHECK(same_instance(parse_instance(text), inst));
}

TEST_CASE("bias kinds parse to the expected classes") {
  auto k4all = parse_instance(std::string("{") + kK4Edges + R"(, "bias": {"kind": "all"}})");
  CHECK(k4all.bg.balance.dimension() == 3);
  auto k4none = parse_instance(std::string("{") + kK4Edges + R"(, "bias": {"kind": "none"}})");
  CHECK(k4none.bg.balance.dimension() == 0);
  // One nonzero label on edge 01: balanced cycles avoid it.
  auto grp = parse_instance(std::string("{") + kK4Edges +
                            R"(, "bias": {"kind": "group", "t": 1,)"
                            R"( "labels": [[1],[0],[0],[0],[0],[0]]}, "matroid": "lift"})");
  CHECK(grp.kind == MatroidKind::Lift);
  CHECK(grp.bg.balance.dimension() == 2);
  CHECK(grp.bg.balance.contains(bit(1) | bit(2) | bit(5)));
  CHECK_FALSE(grp.bg.balance.contains(bit(0) | bit(1) | bit(3)));
  auto gen = parse_instance(std::string("{") + kK4Edges +
                            R"(, "bias": {"kind": "generators", "generators": [[0,1,3]]}})");
  CHECK(gen.bg.balance.dimension() == 1);
  auto ex = parse_instance(nonlinear_k4());
  REQUIRE(ex.explicit_cycles.has_value());
  CHECK(ex.explicit_cycles->size() == 2);
}

TEST_CASE("malformed instances are parse errors with a position") {
  TempDir d("parse");
  put(d.file("bad.json"), "{\"vertices\": 4, \"edges\": [[0,1],");
  std::ostringstream out;
  CHECK(cli::cmd_bases(d.file("bad.json"), false, out) == cli::kParse);
  CHECK(out.str().find("byte") != std::string::npos);

  const char* bad[] = {
      R"({"vertices": 2, "edges": [[0,2]], "bias": {"kind": "all"}})",
      R"({"vertices": 3, "edges": [[0,1],[1,2],[0,1]], "bias": {"kind": "generators", "generators": [[0,1]]}})",
      R"({"vertices": 2, "edges": [[0,1]], "bias": {"kind": "sometimes"}})",
      R"({"vertices": 2, "edges": [[0,1]], "bias": {"kind": "all"}, "matroid": "dual"})",
      R"({"vertices": 2, "edges": [[0,1]], "bias": {"kind": "group", "t": 1, "labels": [[2]]}})",
  };
  for (const char* text : bad) {
    put(d.file("bad.json"), text);
    std::ostringstream o;
    CHECK_MESSAGE(cli::cmd_bases(d.file("bad.json"), false, o) == cli::kParse, text);
  }
  std::ostringstream o;
  CHECK(cli::cmd_bases(d.file("missing.json"), false, o) == cli::kParse);
}

TEST_CASE("bases and circuits listings") {
  TempDir d("bases");
  auto graphic = write_bg(d, "k4g", graphic_bias(k4()));
  auto bicirc = write_bg(d, "k4b", bicircular_bias(k4()));
  std::ostringstream o1, o2, o3;
  CHECK(cli::cmd_bases(graphic, false, o1) == cli::kPass);
  CHECK(o1.str().rfind("bases: 16\n", 0) == 0);
  CHECK(oracle::matrix_tree_count(k4()) == 16);
  CHECK(cli::cmd_bases(bicirc, false, o2) == cli::kPass);
  CHECK(o2.str().rfind("bases: 15\n", 0) == 0);
  CHECK(oracle::oracle_bases(FrameMatroid(bicircular_bias(k4()))).size() == 15);
  CHECK(cli::cmd_circuits(graphic, o3) == cli::kPass);
  // K4 graphic circuits: 4 triangles and 3 four-cycles.
  CHECK(o3.str().rfind("circuits: 7\n", 0) == 0);

  std::vector<Edge> many(17, Edge{0, 1});
  auto big = write_bg(d, "big", bicircular_bias(MultiGraph(2, many)));
  std::ostringstream o4;
  CHECK(cli::cmd_bases(big, false, o4) == cli::kSizeGuard);
}

TEST_CASE("verify-white exit codes") {
  TempDir d("white");
  auto graphic = write_bg(d, "k4g", graphic_bias(k4()));
  auto bicirc = write_bg(d, "k4b", bicircular_bias(k4()));
  cli::WhiteArgs a;
  a.k = 2;
  std::ostringstream o1, o2, o3;
  CHECK(cli::cmd_verify_white(graphic, a, o1) == cli::kPass);
  CHECK(o1.str().find("counterexamples: 0") != std::string::npos);
  CHECK(cli::cmd_verify_white(bicirc, a, o2) == cli::kPass);
  a.node_limit = 1;
  CHECK(cli::cmd_verify_white(graphic, a, o3) == cli::kSearchLimit);
}

TEST_CASE("vdelete writes the derived instance and map") {
  TempDir d("vdel");
  auto triple = write_bg(d, "triple", bicircular_bias(parallel(3)));
  cli::VDeleteArgs a;
  a.vertex = 0;
  a.out_instance = d.file("hat.json");
  a.out_map = d.file("hat.map.json");
  std::ostringstream o;
  REQUIRE(cli::cmd_vdelete(triple, a, o) == cli::kPass);
  Instance hat = read_instance(a.out_instance);
  CHECK(hat.bg.graph.vertex_count() == 1);
  CHECK(hat.bg.graph.edge_count() == 3);
  CHECK(size(hat.bg.graph.loops()) == 3);
  for_each(hat.bg.graph.loops(), [&](int e) { CHECK_FALSE(hat.bg.balance.contains(bit(e))); });
  CHECK(slurp(a.out_map).find("\"hat_edges\"") != std::string::npos);

  auto gtriple = write_bg(d, "gtriple", graphic_bias(parallel(3)));
  std::ostringstream o2;
  a.out_instance.clear();
  a.out_map.clear();
  CHECK(cli::cmd_vdelete(gtriple, a, o2) == cli::kPrecondition);
  a.strict = false;
  std::ostringstream o3;
  CHECK(cli::cmd_vdelete(gtriple, a, o3) == cli::kPass);
  CHECK(o3.str().find("dropped balanced loops: 3") != std::string::npos);

  // Degree-one vertex: the derived graph is G - v.
  auto pend = write_bg(d, "pend", graphic_bias(triangle_pendant()));
  cli::VDeleteArgs b;
  b.vertex = 3;
  b.out_instance = d.file("pend_hat.json");
  std::ostringstream o4;
  REQUIRE(cli::cmd_vdelete(pend, b, o4) == cli::kPass);
  Instance ph = read_instance(b.out_instance);
  CHECK(ph.bg.graph.vertex_count() == 3);
  CHECK(ph.bg.graph.edge_count() == 3);
  CHECK(ph.bg.balance.dimension() == 1);
  CHECK(ph.bg.balance.contains(ph.bg.graph.all_edges()));

  b.vertex = 7;
  std::ostringstream o5;
  CHECK(cli::cmd_vdelete(pend, b, o5) == cli::kPrecondition);
}

TEST_CASE("connected multigraphs match a brute-force isomorphism count") {
  for (int n = 1; n <= 4; ++n)
    for (int m = std::max(1, n - 1); m <= 5; ++m)
      CHECK_MESSAGE(static_cast<long>(connected_multigraphs(n, m).size()) ==
                        brute_graph_count(n, m),
                    "n=" << n << " m=" << m);
}

TEST_CASE("corpus deduplication matches exact class orbits") {
  CorpusBounds b;
  b.max_vertices = 4;
  b.max_edges = 6;
  long exact = 0;
  for (int n = 1; n <= b.max_vertices; ++n)
    for (int m = std::max(1, n - 1); m <= b.max_edges; ++m)
      for (const MultiGraph& g : connected_multigraphs(n, m)) exact += exact_class_orbits(g);
  auto corpus = generate_corpus(b);
  CHECK(static_cast<long>(corpus.size()) == exact);
  std::set<std::string> ids;
  for (const auto& e : corpus) ids.insert(e.id);
  CHECK(ids.size() == corpus.size());
}

TEST_CASE("small corpora contain the expected classes") {
  CorpusBounds b3;
  b3.max_vertices = 3;
  b3.max_edges = 3;
  std::multiset<int> triangle_dims;
  for (const auto& e : generate_corpus(b3))
    if (same_edges(e.bg.graph, {{0, 1}, {0, 2}, {1, 2}}))
      triangle_dims.insert(e.bg.balance.dimension());
  CHECK(triangle_dims == std::multiset<int>{0, 1});

  // K4: 16 labelled subspaces spanned by simple cycles, 6 up to symmetry.
  CHECK(cycle_spanned_classes(k4()).size() == 16);
  CorpusBounds b4;
  b4.max_vertices = 4;
  b4.max_edges = 6;
  b4.min_vertices = 4;
  b4.min_edges = 6;
  int k4_classes = 0;
  for (const auto& e : generate_corpus(b4)) {
    const MultiGraph& g = e.bg.graph;
    bool simple = size(g.loops()) == 0;
    std::set<std::pair<int, int>> pairs;
    for (int x = 0; x < g.edge_count(); ++x) pairs.insert({g.edge(x).u, g.edge(x).v});
    if (simple && pairs.size() == 6) ++k4_classes;
  }
  CHECK(k4_classes == 6);
}

TEST_CASE("corpus output is deterministic") {
  TempDir d1("c1"), d2("c2");
  cli::CorpusArgs a;
  a.bounds.max_vertices = 3;
  a.bounds.max_edges = 4;
  a.dir = d1.path.string();
  std::ostringstream o;
  REQUIRE(cli::cmd_corpus(a, o) == cli::kPass);
  a.dir = d2.path.string();
  REQUIRE(cli::cmd_corpus(a, o) == cli::kPass);
  std::vector<std::string> names;
  for (const auto& de : fs::directory_iterator(d1.path)) names.push_back(de.path().filename());
  std::sort(names.begin(), names.end());
  CHECK(names.size() == 59);  // 58 instances and the manifest
  for (const auto& n : names) CHECK(slurp(d1.file(n)) == slurp(d2.file(n)));

  TempDir s1("s1"), s2("s2");
  a.sample = 10;
  a.seed = 7;
  a.dir = s1.path.string();
  REQUIRE(cli::cmd_corpus(a, o) == cli::kPass);
  a.dir = s2.path.string();
  REQUIRE(cli::cmd_corpus(a, o) == cli::kPass);
  CHECK(slurp(s1.file("manifest.json")) == slurp(s2.file("manifest.json")));
  long count = std::distance(fs::directory_iterator(s1.path), fs::directory_iterator());
  CHECK(count == 11);
}

TEST_CASE("check-all over small corpora") {
  TempDir d("all");
  cli::CorpusArgs a;
  a.bounds.max_vertices = 3;
  a.bounds.max_edges = 4;
  a.dir = d.file("corpus");
  std::ostringstream o;
  REQUIRE(cli::cmd_corpus(a, o) == cli::kPass);

  cli::CheckAllArgs c;
  c.dir = a.dir;
  c.jobs = 2;
  c.certs_dir = d.file("certs");
  std::ostringstream out, err;
  CHECK(cli::cmd_check_all(c, out, err) == cli::kPass);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header.find("\"seed\":1") != std::string::npos);
  CHECK(out.str().find("\"fail\":1") == std::string::npos);

  // Reports are identical across thread counts.
  cli::CheckAllArgs c1 = c;
  c1.jobs = 1;
  c1.certs_dir.clear();
  cli::CheckAllArgs c3 = c1;
  c3.jobs = 3;
  std::ostringstream r1, r3, e;
  cli::cmd_check_all(c1, r1, e);
  cli::cmd_check_all(c3, r3, e);
  CHECK(r1.str() == r3.str());

  // Every emitted certificate replays; tampering is caught.
  int replayed = 0;
  std::vector<std::string> certs;
  for (const auto& de : fs::directory_iterator(c.certs_dir))
    if (de.path().extension() == ".cert") certs.push_back(de.path().string());
  std::sort(certs.begin(), certs.end());
  for (const auto& cert : certs) {
    std::string inst = fs::path(cert).replace_extension(".json").string();
    std::ostringstream ro;
    CHECK_MESSAGE(cli::cmd_replay(inst, cert, ro) == cli::kPass, cert << ": " << ro.str());
    ++replayed;
  }
  CHECK(replayed > 0);
  REQUIRE_FALSE(certs.empty());
  const std::string inst0 = fs::path(certs[0]).replace_extension(".json").string();
  std::string text = slurp(certs[0]);
  std::string bad_hash = text;
  bad_hash[6] = bad_hash[6] == '0' ? '1' : '0';
  put(d.file("bad_hash.cert"), bad_hash);
  std::ostringstream t1;
  CHECK(cli::cmd_replay(inst0, d.file("bad_hash.cert"), t1) == cli::kViolation);
  std::size_t end = text.find("\nend ");
  REQUIRE(end != std::string::npos);
  std::string bad_end = text;
  bad_end.insert(end + 5, "0 ");
  put(d.file("bad_end.cert"), bad_end);
  std::ostringstream t2;
  CHECK(cli::cmd_replay(inst0, d.file("bad_end.cert"), t2) != cli::kPass);
  put(d.file("garbage.cert"), "graph zz\n");
  std::ostringstream t3;
  CHECK(cli::cmd_replay(inst0, d.file("garbage.cert"), t3) == cli::kParse);
}

TEST_CASE("check-all flags a non-linear class") {
  TempDir d("nonlin");
  put(d.file("k4x.json"), nonlinear_k4());
  cli::CheckAllArgs c;
  c.dir = d.path.string();
  c.jobs = 1;
  c.suites.only = {"linearity"};
  std::ostringstream out, err;
  CHECK(cli::cmd_check_all(c, out, err) == cli::kViolation);
  CHECK(out.str().find("\"suite\":\"linearity\",\"status\":\"fail\"") != std::string::npos);
}

TEST_CASE("check-all on an empty directory warns") {
  TempDir d("empty");
  cli::CheckAllArgs c;
  c.dir = d.path.string();
  std::ostringstream out, err;
  CHECK(cli::cmd_check_all(c, out, err) == cli::kPass);
  CHECK(err.str().find("warning: 0 instances") != std::string::npos);
  c.dir = d.file("nope");
  CHECK(cli::cmd_check_all(c, out, err) == cli::kParse);
}

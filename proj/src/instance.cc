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

#include "bm/instance.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bm {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where + ": missing \"" + key + "\"");
  return *it;
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<int>();
}

EdgeSet edge_list(const json& j, int m, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of edge ids");
  EdgeSet s = 0;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    int e = as_int(j[k], at);
    if (e < 0 || e >= m) fail(at + ": edge id " + std::to_string(e) + " out of range");
    if (has(s, e)) fail(at + ": edge id " + std::to_string(e) + " repeated");
    s |= bit(e);
  }
  return s;
}

std::vector<SimpleCycle> cycle_list(const json& j, const MultiGraph& g,
                                    const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array");
  std::vector<SimpleCycle> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    EdgeSet c = edge_list(j[k], g.edge_count(), at);
    if (!is_simple_cycle(g, c)) fail(at + ": " + to_string(c) + " is not a simple cycle");
    out.push_back(c);
  }
  return out;
}

json ids(EdgeSet s) { return json(elements(s)); }

}  // namespace

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) fail("top level: expected an object");

  Instance inst;
  if (auto it = j.find("name"); it != j.end() && it->is_string()) inst.name = it->get<std::string>();

  int n = as_int(field(j, "vertices", "top level"), "vertices");
  if (n < 1 || n > kMaxVertices) fail("vertices: must be in 1.." + std::to_string(kMaxVertices));
  const json& je = field(j, "edges", "top level");
  if (!je.is_array()) fail("edges: expected an array");
  if (je.size() > static_cast<std::size_t>(kMaxEdges))
    throw Error(ErrorCode::SizeExceeded, "edges: more than " + std::to_string(kMaxEdges));
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < je.size(); ++k) {
    const std::string at = "edges[" + std::to_string(k) + "]";
    if (!je[k].is_array() || je[k].size() != 2) fail(at + ": expected [u, v]");
    int u = as_int(je[k][0], at), v = as_int(je[k][1], at);
    if (u < 0 || u >= n || v < 0 || v >= n) fail(at + ": endpoint out of range");
    edges.push_back({u, v});
  }
  MultiGraph g(n, std::move(edges));

  if (auto it = j.find("matroid"); it != j.end()) {
    if (*it == "frame") inst.kind = MatroidKind::Frame;
    else if (*it == "lift") inst.kind = MatroidKind::Lift;
    else fail("matroid: expected \"frame\" or \"lift\"");
  }

  const json& jb = field(j, "bias", "top level");
  const std::string kind = field(jb, "kind", "bias").is_string()
                               ? jb["kind"].get<std::string>() : "";
  if (kind == "all") {
    inst.bg = graphic_bias(g);
  } else if (kind == "none") {
    inst.bg = bicircular_bias(g);
  } else if (kind == "generators") {
    auto gens = cycle_list(field(jb, "generators", "bias"), g, "bias.generators");
    inst.bg = {g, linear_completion(g, gens)};
  } else if (kind == "explicit") {
    auto cycles = cycle_list(field(jb, "cycles", "bias"), g, "bias.cycles");
    inst.bg = {g, linear_completion(g, cycles)};
    inst.explicit_cycles = std::move(cycles);
  } else if (kind == "rows") {
    const json& jr = field(jb, "rows", "bias");
    if (!jr.is_array()) fail("bias.rows: expected an array");
    std::vector<EdgeSet> rows;
    for (std::size_t k = 0; k < jr.size(); ++k) {
      const std::string at = "bias.rows[" + std::to_string(k) + "]";
      EdgeSet r = edge_list(jr[k], g.edge_count(), at);
      if (!is_even(g, r)) fail(at + ": not an even subgraph");
      rows.push_back(r);
    }
    inst.bg = {g, LinearClass(rows)};
  } else if (kind == "group") {
    int t = as_int(field(jb, "t", "bias"), "bias.t");
    if (t < 1 || t > 32) fail("bias.t: must be in 1..32");
    const json& jl = field(jb, "labels", "bias");
    if (!jl.is_array() || jl.size() != static_cast<std::size_t>(g.edge_count()))
      fail("bias.labels: expected one label per edge");
    std::vector<std::uint32_t> labels;
    for (std::size_t k = 0; k < jl.size(); ++k) {
      const std::string at = "bias.labels[" + std::to_string(k) + "]";
      if (!jl[k].is_array() || jl[k].size() != static_cast<std::size_t>(t))
        fail(at + ": expected " + std::to_string(t) + " bits");
      std::uint32_t x = 0;
      for (int b = 0; b < t; ++b) {
        int v = as_int(jl[k][b], at);
        if (v != 0 && v != 1) fail(at + ": bits must be 0 or 1");
        x |= static_cast<std::uint32_t>(v) << b;
      }
      labels.push_back(x);
    }
    inst.bg = from_group_labelling(g, t, labels);
  } else {
    fail("bias.kind: unknown kind \"" + kind + "\"");
  }
  return inst;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Instance inst = parse_instance(ss.str());
  if (inst.name.empty()) inst.name = path;
  return inst;
}

std::string emit_instance(const Instance& inst) {
  const MultiGraph& g = inst.bg.graph;
  const LinearClass& cls = inst.bg.balance;
  json j;
  if (!inst.name.empty()) j["name"] = inst.name;
  j["vertices"] = g.vertex_count();
  json je = json::array();
  for (const Edge& e : g.edges()) je.push_back({e.u, e.v});
  j["edges"] = je;

  json jb;
  if (inst.explicit_cycles) {
    jb["kind"] = "explicit";
    json jc = json::array();
    for (SimpleCycle c : *inst.explicit_cycles) jc.push_back(ids(c));
    jb["cycles"] = jc;
  } else if (cls.dimension() == 0) {
    jb["kind"] = "none";
  } else if (cls == graphic_bias(g).balance) {
    jb["kind"] = "all";
  } else {
    // Greedy basis of balanced simple cycles, shortest first.
    std::vector<SimpleCycle> cyc = balanced_cycles(inst.bg);
    std::stable_sort(cyc.begin(), cyc.end(),
                     [](SimpleCycle a, SimpleCycle b) { return size(a) < size(b); });
    LinearClass span;
    json jg = json::array();
    for (SimpleCycle c : cyc)
      if (span.insert(c)) jg.push_back(ids(c));
    if (span == cls) {
      jb["kind"] = "generators";
      jb["generators"] = jg;
    } else {
      jb["kind"] = "rows";
      json jr = json::array();
      for (EdgeSet r : cls.reduced_basis()) jr.push_back(ids(r));
      jb["rows"] = jr;
    }
  }
  j["bias"] = jb;
  j["matroid"] = inst.kind == MatroidKind::Frame ? "frame" : "lift";
  return j.dump() + "\n";
}

void write_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << emit_instance(inst);
}

bool same_instance(const Instance& a, const Instance& b) {
  return a.bg.graph == b.bg.graph && a.bg.balance == b.bg.balance &&
         a.kind == b.kind && a.explicit_cycles == b.explicit_cycles;
}

}  // namespace bm

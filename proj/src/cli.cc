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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "bm/vdeletion.h"
#include "json.hpp"

namespace bm::cli {
namespace fs = std::filesystem;
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

std::string seq_string(const BaseSequence& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + to_string(s[i]);
  return out + ")";
}

template <class F>
int guarded(std::ostream& out, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}

}  // namespace

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidGraph:
      return kParse;
    case ErrorCode::SizeExceeded:
      return kSizeGuard;
    case ErrorCode::BudgetExceeded:
      return kSearchLimit;
    case ErrorCode::NoWitness:
      return kViolation;
    default:
      return kPrecondition;
  }
}

int cmd_bases(const std::string& file, bool force, std::ostream& out) {
  return guarded(out, [&] {
    Instance inst = read_instance(file);
    FrameMatroid m = inst.matroid();
    const auto& bs = m.bases(force);
    out << "bases: " << bs.size() << "\n";
    for (EdgeSet b : bs) out << to_string(b) << "\n";
    return kPass;
  });
}

int cmd_circuits(const std::string& file, std::ostream& out) {
  return guarded(out, [&] {
    Instance inst = read_instance(file);
    auto cs = circuits(inst.matroid());
    out << "circuits: " << cs.size() << "\n";
    for (const Circuit& c : cs) out << to_string(c.edges) << " " << shape_name(c.shape) << "\n";
    return kPass;
  });
}

int cmd_verify_white(const std::string& file, const WhiteArgs& args, std::ostream& out) {
  return guarded(out, [&] {
    Instance inst = read_instance(file);
    FrameMatroid m = inst.matroid();
    if (m.edge_count() > kBaseEnumerationLimit)
      throw Error(ErrorCode::SizeExceeded, "base enumeration limited to 16 edges");
    WhiteOptions wo;
    wo.state_limit = args.node_limit;
    WhiteReport rep;
    try {
      rep = white_verify(m, args.k, wo);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SizeExceeded) throw;
      out << "limit: " << e.what() << "\n";
      return kSearchLimit;
    }
    long counterexamples = rep.counterexamples;
    if (counterexamples && args.modulo_permutation) {
      PathOptions po;
      po.modulo_permutation = true;
      po.node_limit = args.node_limit;
      auto res = exchange_path(m, rep.counterexample->first, rep.counterexample->second, po);
      if (res.status == PathStatus::LimitHit) {
        out << "limit: modulo-permutation search\n";
        return kSearchLimit;
      }
      if (res.status == PathStatus::Found) counterexamples = 0;
    }
    out << "k: " << rep.k << "\n"
        << "bases: " << rep.bases << "\n"
        << "tuples: " << rep.tuples << "\n"
        << "classes: " << rep.classes << "\n"
        << "largest class: " << rep.largest_class << "\n"
        << "max diameter: " << rep.max_diameter << (rep.diameter_exact ? "" : " (lower bound)")
        << "\n"
        << "counterexamples: " << counterexamples << "\n";
    if (counterexamples)
      out << "counterexample: " << seq_string(rep.counterexample->first) << " / "
          << seq_string(rep.counterexample->second) << "\n";
    return counterexamples ? kViolation : kPass;
  });
}

int cmd_vdelete(const std::string& file, const VDeleteArgs& args, std::ostream& out) {
  return guarded(out, [&] {
    Instance inst = read_instance(file);
    const MultiGraph& g = inst.bg.graph;
    if (args.vertex < 0 || args.vertex >= g.vertex_count())
      throw Error(ErrorCode::PreconditionViolated, "vertex out of range");
    if (g.vertex_count() < 2)
      throw Error(ErrorCode::PreconditionViolated, "cannot delete the only vertex");
    VDeleteOptions vo;
    vo.strict = args.strict;
    vo.kind = inst.kind;
    VDeletionMap map = v_delete(inst.bg, args.vertex, vo);

    Instance hat;
    hat.name = inst.name + "-v" + std::to_string(args.vertex);
    hat.bg = map.target;
    hat.kind = inst.kind;
    const std::string text = emit_instance(hat);
    if (!same_instance(parse_instance(text), hat))
      throw Error(ErrorCode::ParseError, "derived instance does not round-trip");

    nlohmann::ordered_json j;
    j["source"] = inst.name;
    j["v"] = map.v;
    j["v_edges"] = map.v_edges;
    j["source_edge"] = map.source_edge;
    j["vertex_map"] = map.vertex_map;
    nlohmann::ordered_json he = nlohmann::ordered_json::array();
    for (const HatEdge& h : map.hat_edges)
      he.push_back({{"id", h.id}, {"i", h.i}, {"j", h.j}, {"stem_loop", h.stem_loop}});
    j["hat_edges"] = he;
    nlohmann::ordered_json pull = nlohmann::ordered_json::array();
    for (EdgeSet p : map.pull) pull.push_back(elements(p));
    j["pull"] = pull;
    j["dropped_balanced_loops"] = elements(map.dropped_balanced_loops);

    if (!args.out_instance.empty()) write_file(args.out_instance, text);
    else out << text;
    if (!args.out_map.empty()) write_file(args.out_map, j.dump(2) + "\n");
    const MultiGraph& gh = map.target.graph;
    out << "vertices: " << gh.vertex_count() << "\n"
        << "edges: " << gh.edge_count() << "\n"
        << "new edges: " << map.hat_edges.size() << "\n"
        << "loops: " << size(gh.loops()) << "\n"
        << "dropped balanced loops: " << size(map.dropped_balanced_loops) << "\n";
    return kPass;
  });
}

int cmd_corpus(const CorpusArgs& args, std::ostream& out) {
  return guarded(out, [&] {
    auto corpus = generate_corpus(args.bounds);
    auto pick = sample_indices(corpus.size(), args.sample, args.seed);
    fs::create_directories(args.dir);
    nlohmann::ordered_json manifest;
    manifest["max_vertices"] = args.bounds.max_vertices;
    manifest["max_edges"] = args.bounds.max_edges;
    manifest["seed"] = args.seed;
    manifest["sample"] = args.sample;
    manifest["generated"] = corpus.size();
    manifest["instances"] = pick.size();
    nlohmann::ordered_json ids = nlohmann::ordered_json::array();
    for (std::size_t i : pick) {
      Instance inst;
      inst.name = corpus[i].id;
      inst.bg = corpus[i].bg;
      write_instance((fs::path(args.dir) / (inst.name + ".json")).string(), inst);
      ids.push_back(inst.name);
    }
    manifest["ids"] = ids;
    write_file((fs::path(args.dir) / "manifest.json").string(), manifest.dump(1) + "\n");
    out << "wrote " << pick.size() << " of " << corpus.size() << " instances to " << args.dir
        << "\n";
    return kPass;
  });
}

int cmd_check_all(const CheckAllArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<std::string> files;
    if (!fs::is_directory(args.dir))
      throw Error(ErrorCode::ParseError, args.dir + " is not a directory");
    for (const auto& de : fs::directory_iterator(args.dir))
      if (de.path().extension() == ".json" && de.path().filename() != "manifest.json")
        files.push_back(de.path().string());
    std::sort(files.begin(), files.end());
    std::vector<Instance> insts;
    for (const auto& f : files) {
      Instance inst = read_instance(f);
      if (inst.name == f) inst.name = fs::path(f).stem().string();
      insts.push_back(std::move(inst));
    }
    std::sort(insts.begin(), insts.end(),
              [](const Instance& a, const Instance& b) { return a.name < b.name; });
    auto pick = sample_indices(insts.size(), args.sample, args.suites.seed);

    nlohmann::ordered_json header;
    header["report"] = "check-all";
    header["corpus"] = args.dir;
    header["seed"] = args.suites.seed;
    header["sample"] = args.sample;
    header["instances"] = pick.size();
    out << header.dump() << "\n";
    if (pick.empty()) {
      err << "warning: 0 instances in " << args.dir << "\n";
      return kPass;
    }

    SuiteOptions so = args.suites;
    so.keep_certificates = so.keep_certificates || !args.certs_dir.empty();
    std::vector<std::vector<SuiteRecord>> results(pick.size());
    std::atomic<std::size_t> next{0};
    int jobs = args.jobs > 0 ? args.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    jobs = std::min<int>(jobs, static_cast<int>(pick.size()));
    auto worker = [&] {
      for (std::size_t i; (i = next++) < pick.size();) results[i] = run_suites(insts[pick[i]], so);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    struct Totals {
      long pass = 0, fail = 0, skip = 0, limit = 0;
      std::vector<std::pair<std::string, long>> counts;
    };
    std::map<std::string, Totals> totals;
    long certs = 0;
    if (!args.certs_dir.empty()) fs::create_directories(args.certs_dir);
    for (const auto& recs : results)
      for (const SuiteRecord& r : recs) {
        out << r.json_line() << "\n";
        Totals& t = totals[r.suite];
        switch (r.status) {
          case SuiteStatus::Pass: ++t.pass; break;
          case SuiteStatus::Fail: ++t.fail; break;
          case SuiteStatus::Skip: ++t.skip; break;
          case SuiteStatus::Limit: ++t.limit; break;
        }
        for (const auto& [k, v] : r.counts) {
          auto it = std::find_if(t.counts.begin(), t.counts.end(),
                                 [&](const auto& kv) { return kv.first == k; });
          if (it == t.counts.end()) t.counts.emplace_back(k, v);
          else it->second += v;
        }
        if (args.certs_dir.empty()) continue;
        for (std::size_t c = 0; c < r.certificates.size(); ++c) {
          const auto& cr = r.certificates[c];
          const std::string stem = r.instance + "-" + r.suite + "-" + std::to_string(c);
          write_instance((fs::path(args.certs_dir) / (stem + ".json")).string(), cr.instance);
          write_file((fs::path(args.certs_dir) / (stem + ".cert")).string(),
                     serialize_certificate(cr.cert, graph_hash(cr.instance.bg.graph)));
          ++certs;
        }
      }
    bool any_fail = false, any_limit = false;
    for (const auto& name : suite_names()) {
      auto it = totals.find(name);
      if (it == totals.end()) continue;
      const Totals& t = it->second;
      nlohmann::ordered_json s;
      s["summary"] = name;
      s["pass"] = t.pass;
      s["fail"] = t.fail;
      s["skip"] = t.skip;
      s["limit"] = t.limit;
      nlohmann::ordered_json c = nlohmann::ordered_json::object();
      for (const auto& [k, v] : t.counts) c[k] = v;
      s["counts"] = c;
      out << s.dump() << "\n";
      any_fail = any_fail || t.fail;
      any_limit = any_limit || t.limit;
    }
    if (!args.certs_dir.empty())
      err << "wrote " << certs << " certificates to " << args.certs_dir << "\n";
    return any_fail ? kViolation : any_limit ? kSearchLimit : kPass;
  });
}

int cmd_replay(const std::string& instance_file, const std::string& cert_file,
               std::ostream& out) {
  return guarded(out, [&] {
    Instance inst = read_instance(instance_file);
    auto [cert, gh] = parse_certificate(read_file(cert_file));
    if (gh != graph_hash(inst.bg.graph)) {
      out << "replay: graph hash does not match the instance\n";
      return kViolation;
    }
    auto rep = replay(inst.matroid(), cert);
    if (!rep.ok) {
      out << "replay: " << rep.error << "\n";
      return kViolation;
    }
    out << "replay: ok, " << cert.moves.size() << " moves\n";
    return kPass;
  });
}

}  // namespace bm::cli

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

// bm: biased-graph matroid tool.

#include <iostream>

#include "CLI11.hpp"
#include "bm/cli.h"

int main(int argc, char** argv) {
  namespace cli = bm::cli;
  CLI::App app{"Frame matroids of biased graphs: enumeration and exchange checks"};
  app.require_subcommand(1);
  int code = cli::kPass;

  std::string file;
  bool force = false;
  auto* bases = app.add_subcommand("bases", "List the bases of an instance");
  bases->add_option("file", file, "Instance JSON")->required();
  bases->add_flag("--force", force, "Enumerate beyond 16 edges");
  bases->callback([&] { code = cli::cmd_bases(file, force, std::cout); });

  auto* circuits = app.add_subcommand("circuits", "List the circuits of an instance");
  circuits->add_option("file", file, "Instance JSON")->required();
  circuits->callback([&] { code = cli::cmd_circuits(file, std::cout); });

  cli::WhiteArgs white;
  auto* vw = app.add_subcommand("verify-white", "Connectivity of compatible base sequences");
  vw->add_option("file", file, "Instance JSON")->required();
  vw->add_option("--k", white.k, "Sequence length")->check(CLI::Range(1, 7));
  vw->add_flag("--modulo-permutation", white.modulo_permutation,
               "Allow reordering the target sequence");
  vw->add_option("--node-limit", white.node_limit, "State limit")->check(CLI::PositiveNumber);
  vw->callback([&] { code = cli::cmd_verify_white(file, white, std::cout); });

  cli::VDeleteArgs vd;
  bool lenient = false;
  auto* vdel = app.add_subcommand("vdelete", "Delete a vertex and write the derived instance");
  vdel->add_option("file", file, "Instance JSON")->required();
  vdel->add_option("--vertex", vd.vertex, "Vertex to delete")->required();
  vdel->add_option("--out", vd.out_instance, "Derived instance file (default stdout)");
  vdel->add_option("--map", vd.out_map, "Map file");
  vdel->add_flag("--keep-balanced-loops", lenient,
                 "Keep new loops over balanced 2-cycles as unbalanced loops");
  vdel->callback([&] {
    vd.strict = !lenient;
    code = cli::cmd_vdelete(file, vd, std::cout);
  });

  cli::CorpusArgs corpus;
  auto* cor = app.add_subcommand("corpus", "Write every small biased graph as instance files");
  cor->add_option("--max-vertices", corpus.bounds.max_vertices)->check(CLI::Range(1, 6));
  cor->add_option("--max-edges", corpus.bounds.max_edges)->check(CLI::Range(1, 10));
  cor->add_option("--seed", corpus.seed, "Sampling seed");
  cor->add_option("--sample", corpus.sample, "Keep this many instances (default all)");
  cor->add_option("--out", corpus.dir, "Output directory")->required();
  cor->callback([&] { code = cli::cmd_corpus(corpus, std::cout); });

  cli::CheckAllArgs check;
  std::vector<std::string> only;
  auto* ca = app.add_subcommand("check-all", "Run every suite over a corpus directory");
  ca->add_option("corpus_dir", check.dir, "Directory of instance files")->required();
  ca->add_option("--suite", only, "Run only these suites");
  ca->add_option("--seed", check.suites.seed, "Seed for sampled pairs and paths");
  ca->add_option("--sample", check.sample, "Check this many instances (default all)");
  ca->add_option("--jobs", check.jobs, "Worker threads (default: hardware)");
  ca->add_option("--certs", check.certs_dir, "Write emitted certificates here");
  ca->add_option("--white-max-k", check.suites.white_max_k)->check(CLI::Range(2, 4));
  ca->add_option("--switch-budget", check.suites.switch_budget)->check(CLI::PositiveNumber);
  ca->callback([&] {
    for (const auto& s : only) {
      const auto& names = bm::suite_names();
      if (std::find(names.begin(), names.end(), s) == names.end())
        throw CLI::ValidationError("--suite", "unknown suite " + s);
      check.suites.only.insert(s);
    }
    code = cli::cmd_check_all(check, std::cout, std::cerr);
  });

  std::string cert;
  auto* rep = app.add_subcommand("replay", "Re-validate a certificate against its instance");
  rep->add_option("instance", file, "Instance JSON")->required();
  rep->add_option("certificate", cert, "Certificate file")->required();
  rep->callback([&] { code = cli::cmd_replay(file, cert, std::cout); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kParse;
  }
  return code;
}

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

// Subcommands of the bm tool.  Each returns its process exit code and
// writes to the given streams.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "bm/corpus.h"
#include "bm/error.h"
#include "bm/suites.h"

namespace bm::cli {

enum Exit : int {
  kPass = 0,
  kViolation = 1,
  kParse = 2,
  kSizeGuard = 3,
  kSearchLimit = 4,
  kPrecondition = 5,
};

int exit_code(const Error& e);

int cmd_bases(const std::string& file, bool force, std::ostream& out);
int cmd_circuits(const std::string& file, std::ostream& out);

struct WhiteArgs {
  int k = 2;
  bool modulo_permutation = false;
  long node_limit = 10000000;
};
int cmd_verify_white(const std::string& file, const WhiteArgs& args,
                     std::ostream& out);

struct VDeleteArgs {
  int vertex = 0;
  std::string out_instance;
  std::string out_map;
  bool strict = true;
};
int cmd_vdelete(const std::string& file, const VDeleteArgs& args,
                std::ostream& out);

struct CorpusArgs {
  CorpusBounds bounds;
  std::uint64_t seed = 1;
  long sample = -1;
  std::string dir;
};
int cmd_corpus(const CorpusArgs& args, std::ostream& out);

struct CheckAllArgs {
  std::string dir;
  SuiteOptions suites;
  long sample = -1;
  int jobs = 0;  // 0: hardware concurrency
  std::string certs_dir;
};
int cmd_check_all(const CheckAllArgs& args, std::ostream& out,
                  std::ostream& err);

int cmd_replay(const std::string& instance_file, const std::string& cert_file,
               std::ostream& out);

}  // namespace bm::cli

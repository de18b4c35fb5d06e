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

// Verification suites run per instance, one record per (instance, suite).
//
//   axioms          base exchange, circuit elimination, oracle lists; frame and lift
//   specialization  all balanced: spanning trees; none balanced: bicircular
//   linearity       theta property and closure of the balanced cycle list
//   cycle_lemmas    tree-path unions, unbalanced cotrees, shared paths
//   vdeletion       unbalanced cycles stay unbalanced under v-deletion
//   pullback        base-set pull-backs nonempty; cover certificates
//   structure       F-set classification, amenability, switching, handcuffs
//   reduction       v-reduction, matching alignment, switch partners
//   white           compatible sequences connected, k = 2, 3
//   extended        extended sequences connected, k = 1, 2
//   two_exchange    2-serial exchange for every base pair and 2-subset
//   certificates    sampled exchange paths replay and telescope

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bm/exchange.h"
#include "bm/instance.h"

namespace bm {

enum class SuiteStatus { Pass, Fail, Skip, Limit };
const char* suite_status_name(SuiteStatus s);

struct CertificateRecord {
  Instance instance;  // the matroid the certificate lives in
  ExchangeCertificate cert;
};

struct SuiteRecord {
  std::string instance;
  std::string suite;
  SuiteStatus status = SuiteStatus::Pass;
  std::vector<std::pair<std::string, long>> counts;
  std::string detail;  // first failure, or why it was skipped
  std::vector<CertificateRecord> certificates;

  void count(const std::string& key, long n);
  long get(const std::string& key) const;
  void fail(const std::string& what);
  std::string json_line() const;
};

const std::vector<std::string>& suite_names();

struct SuiteOptions {
  std::set<std::string> only;  // empty: all suites
  std::uint64_t seed = 1;
  int white_max_k = 3;
  int extended_max_k = 2;
  long white_state_limit = 2000000;
  long white_exact_diameter_limit = 0;  // classes this small get exact diameters
  long connectivity_class_limit = 100;  // classes cross-checked by the oracle
  long structure_pair_limit = 50000000;
  long switch_budget = 20000;
  int structure_max_hat_edges = 64;
  int reduction_pairs = 2;  // random compatible pairs per instance and k
  long reduction_budget = 200000;
  int certificate_paths = 2;  // white paths sampled per instance
  bool keep_certificates = false;
};

std::vector<SuiteRecord> run_suites(const Instance& inst,
                                    const SuiteOptions& opts);

}  // namespace bm

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

// Instance files: a biased graph and a matroid flavour as JSON.
//
//   {"vertices": n, "edges": [[u, v], ...],
//    "bias": {"kind": "all"} | {"kind": "none"}
//          | {"kind": "generators", "generators": [[edge ids], ...]}
//          | {"kind": "explicit", "cycles": [[edge ids], ...]}
//          | {"kind": "group", "t": t, "labels": [[bits], ...]}
//          | {"kind": "rows", "rows": [[edge ids], ...]},
//    "matroid": "frame" | "lift"}
//
// "generators" and "explicit" lists must be simple cycles; "explicit" keeps
// the list as given so its linearity can be checked.  "rows" is any basis
// of the class as even subgraphs and is emitted only when the balanced
// simple cycles do not span the class.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bm/matroid.h"

namespace bm {

struct Instance {
  std::string name;
  BiasedGraph bg;
  MatroidKind kind = MatroidKind::Frame;
  std::optional<std::vector<SimpleCycle>> explicit_cycles;
  FrameMatroid matroid() const { return FrameMatroid(bg, kind); }
};

// ParseError with the position or field at fault.
Instance parse_instance(const std::string& text);
Instance read_instance(const std::string& path);

std::string emit_instance(const Instance& inst);
void write_instance(const std::string& path, const Instance& inst);

bool same_instance(const Instance& a, const Instance& b);

}  // namespace bm

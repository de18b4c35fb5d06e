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

#include "bm/error.h"

namespace bm {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeExceeded: return "SizeExceeded";
    case ErrorCode::EdgeInTree: return "EdgeInTree";
    case ErrorCode::DisconnectedEndpoints: return "DisconnectedEndpoints";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::LabelCountMismatch: return "LabelCountMismatch";
    case ErrorCode::NotABase: return "NotABase";
    case ErrorCode::ElementInBase: return "ElementInBase";
    case ErrorCode::ElementNotInBase: return "ElementNotInBase";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ContainsEBMove: return "ContainsEBMove";
    case ErrorCode::BalancedLoopPresent: return "BalancedLoopPresent";
    case ErrorCode::EmptyPullback: return "EmptyPullback";
    case ErrorCode::StemLoop: return "StemLoop";
    case ErrorCode::NoInducedChoice: return "NoInducedChoice";
    case ErrorCode::NotVReduced: return "NotVReduced";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotAmenable: return "NotAmenable";
    case ErrorCode::NotSwitchable: return "NotSwitchable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
  }
  return "Unknown";
}

}  // namespace bm

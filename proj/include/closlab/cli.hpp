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

// The closlab command line. Every command prints one JSON report:
//
//   {"command": ..., "argv": [...], "operator": {"n", "label", "rank", ...},
//    "result": {...}, "status": "ok" | "invalid" | "error" | "budget_exceeded",
//    "error": {"kind", "message"}}
//
// Rationals are {"num", "den"}, subsets sorted lists of 1-based vertices.

#ifndef CLOSLAB_CLI_HPP_
#define CLOSLAB_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace closlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;   // parse, validation and usage errors
inline constexpr int kExitBudget = 3;  // enumeration budget or size cap exceeded

// args excludes the program name. The report goes to out unless --out names
// a file for it; diagnostics go to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace closlab

#endif  // CLOSLAB_CLI_HPP_

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

// Text formats. Lines starting with '#' and blank lines are ignored
// everywhere; errors carry the 1-based line number.
//
//   digraph <n>        closure <n> | setop <n>     coding <n> <q> <r>
//   <u> <v>            {1,2} -> {1,2,3}            <rgs of f_1>
//   ...                ... (all 2^n subsets once)  ... (one line per vertex)
//
// A density tree operator is stored by its parameters, "tree <r> <a/b>", since
// it usually has too many vertices for a table.

#ifndef CLOSLAB_IO_HPP_
#define CLOSLAB_IO_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "closlab/closure.hpp"
#include "closlab/coding.hpp"
#include "closlab/constructors.hpp"
#include "closlab/reduction.hpp"

namespace closlab {

Digraph parse_digraph(std::string_view text);
std::string format_digraph(const Digraph& d);

struct TableFile {
  bool setop = false;  // header "setop"; otherwise "closure"
  int n = 0;
  std::vector<Mask> table;
};

// Syntax only: header, every subset exactly once, sorted vertex lists.
TableFile parse_table(std::string_view text);

// A "closure" table, validated unless validate is false; a failure throws
// ValidationError naming the rule and the witness. A "setop" header is a
// ParseError here.
ClosureOperator parse_closure_table(std::string_view text, bool validate = true);
// Either header; no axioms checked.
SetOperator parse_setop_table(std::string_view text);

std::string format_closure_table(const ClosureOperator& op);
std::string format_setop_table(const SetOperator& a);

struct TreeFile {
  int r = 0;
  BigRational H;
};
TreeFile parse_tree_file(std::string_view text);
std::string format_tree_file(int r, const BigRational& H);

// First keyword of the first content line ("digraph", "closure", ...), or
// empty when there is none.
std::string header_keyword(std::string_view text);

// The closure operator must be given: the file records only the partitions.
CodingFunction parse_coding_function(std::string_view text, const ClosureOperator& op);
std::string format_coding_function(const CodingFunction& f);

}  // namespace closlab

#endif  // CLOSLAB_IO_HPP_

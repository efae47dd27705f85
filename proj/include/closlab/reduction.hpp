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

// Arbitrary set operators, their coding functions over a general carrier, and
// the reduction of a set operator to a closure operator with the same coding
// functions.

#ifndef CLOSLAB_REDUCTION_HPP_
#define CLOSLAB_REDUCTION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "closlab/closure.hpp"
#include "closlab/partition.hpp"

namespace closlab {

inline constexpr int kMaxReductionSize = 10;

// A total map 2^V -> 2^V, no axioms assumed.
class SetOperator {
 public:
  SetOperator() : SetOperator(0, {0}) {}
  SetOperator(int n, std::vector<Mask> table, std::string label = {});
  static SetOperator of(const ClosureOperator& op);

  int size() const { return n_; }
  Mask ground() const { return full_mask(n_); }
  const std::string& label() const { return label_; }
  Mask operator()(Mask x) const { return table_[x]; }
  const std::vector<Mask>& table() const { return table_; }

  friend bool operator==(const SetOperator& a, const SetOperator& b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  int n_ = 0;
  std::vector<Mask> table_;
  std::string label_;
};

// Every entry uniform over 2^V.
SetOperator random_set_operator(int n, std::uint64_t seed);

struct ReductionTrace {
  std::vector<int> component;  // weak component id of every X, numbered by least member
  std::vector<Mask> b;         // union of the members of X's component
  std::vector<Mask> c;         // union of b(Y) over Y ⊆ X
  std::vector<std::vector<Mask>> powers;  // c^1, c^2, ... up to the fixpoint
  int iterations = 0;          // powers.size(); at most max(n, 1)
  // First X not contained in the union of a(Y) over its component, i.e.
  // where that union alone would not be extensive.
  std::optional<Mask> union_of_images_not_extensive;
};

struct Reduction {
  ClosureOperator closure;
  ReductionTrace trace;
};

// Three steps, each preserving the coding functions: b merges each component
// of Y -> a(Y) into its union, c makes b isotone, and iterating c reaches a
// closure operator. Requires n <= kMaxReductionSize.
Reduction reduce_to_closure(const SetOperator& a);

// A tuple (f_1..f_n) of partitions of {0..m-1}.
using CodingTuple = std::vector<Partition>;

struct EnumerateOptions {
  std::uint64_t budget = 1'000'000;  // bound on candidates^n
};

// All tuples with at most q parts per vertex and f_{a(X)} = f_X for every X,
// f_X being the join over X (universal for X = ∅). Sorted lexicographically.
// Throws BudgetExceeded when candidates^n exceeds the budget.
std::vector<CodingTuple> enumerate_coding_functions(const SetOperator& a, int q, int m,
                                                    const EnumerateOptions& options = {});

// Same coding-function set at this (q, m). A witness of equivalence at one
// carrier size only.
bool operators_equivalent(const SetOperator& a, const SetOperator& a2, int q, int m,
                          const EnumerateOptions& options = {});

}  // namespace closlab

#endif  // CLOSLAB_REDUCTION_HPP_

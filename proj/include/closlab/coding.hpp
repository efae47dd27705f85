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


// Coding functions: one partition of A^r per vertex, compatible with the
// closure operator.

#ifndef CLOSLAB_CODING_HPP_
#define CLOSLAB_CODING_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "closlab/closure.hpp"
#include "closlab/constructors.hpp"
#include "closlab/partition.hpp"
#include "closlab/ranks.hpp"

namespace closlab {

struct CodingFunction {
  ClosureOperator op;
  int q = 2;  // alphabet size
  int r = 0;  // rank of op; the carrier is A^r
  std::vector<Partition> parts;  // parts[v-1] = f_v

  int carrier() const { return parts.empty() ? 0 : parts.front().carrier(); }
  // f_X, the join over v ∈ X; the universal partition for X = ∅.
  Partition of(Mask x) const;
};

// Checks the carrier is q^r, every f_v has at most q parts and f_X = f_{cl(X)}
// for every X. Rules: "carrier", "part-count", "closure".
ValidationReport coding_validate(const CodingFunction& f, bool all_witnesses = false);

Entropy entropy_of(const CodingFunction& f, Mask x);
bool is_solution(const CodingFunction& f);

// H_f(X) for every X (n <= 20).
std::vector<Entropy> entropy_table(const CodingFunction& f);

// cl_f(X) = {v : f_{X∪v} = f_X}. Throws ValidationError when f is not a
// coding function, and std::logic_error if op <= cl_f ever fails.
ClosureOperator induced_closure(const CodingFunction& f);

struct CodingRankBounds {
  Entropy lower;  // H_f(V) - H_f(V \ cl(X))
  Entropy lrk_f_closure;  // lrk_f(cl(X))
  Entropy lrk_f;  // lrk_f(X) = min{H_f(Y) : cl(Y ∪ (V\X)) = V}
  Entropy urk_f;  // H_f(V) - lrk_f(V\X)
  Entropy h;      // H_f(X)
  int ork = 0;
  bool chain_holds = false;  // lower <= lrk_f(cl X) <= urk_f <= H_f(X) <= ork
};

CodingRankBounds coding_rank_bounds(const CodingFunction& f, Mask x);
// Same, reusing a table from entropy_table(f) and a profile of f.op.
CodingRankBounds coding_rank_bounds(const CodingFunction& f, const std::vector<Entropy>& table,
                                    const RankProfile& profile, Mask x);

struct SolveOptions {
  std::uint64_t budget = 10'000'000;  // search nodes (partial assignments)
  int threads = 1;
  bool collect_solutions = false;  // keep every f with f_V = equality
  std::size_t max_collected = 100'000;
  // Restricts the candidate partitions for every vertex; defaults to all
  // canonical partitions of q^r elements into at most q parts.
  std::optional<std::vector<Partition>> candidates;
};

struct SolveResult {
  Entropy best;
  std::optional<CodingFunction> best_f;
  bool complete = false;  // the search space was exhausted or r was reached
  bool budget_exhausted = false;
  std::uint64_t nodes = 0;
  std::uint64_t search_space = 0;  // candidates^n, saturating
  std::vector<CodingFunction> solutions;
};

// Depth-first search over per-vertex partitions with pruning on every
// constraint f_X = f_{cl(X)} whose sets are fully assigned. Ties go to the
// lexicographically least assignment, independent of the thread count.
SolveResult solve_exhaustive(const ClosureOperator& op, int q, const SolveOptions& options = {});

// Partition of {0..q^k - 1} by base-q digit i (0-based, least significant first).
Partition coordinate_partition(int q, int k, int i);

// C̄₄ (the bidirected 4-cycle): f_1 = f_2 = coordinate 1, f_3 = f_4 = coordinate 2.
CodingFunction c4_solution(int q);
// f_1 = f_3 = coordinate 1, f_2 = f_4 = coordinate 2; fails at {1,3}.
CodingFunction c4_literal_assignment(int q);

struct DensityCoding {
  CodingFunction f;
  int base = 2;  // |B|; A = B^D
  std::vector<Mask> S;  // S(v) ⊆ {1..rD} as a coordinate mask, bit i-1 for coordinate i
  Mask sigma = 0;  // Σ = {1..DH}
};

// f_v = g_{S(v)}, the partition of B^{rD} by the coordinates in S(v).
// Throws SizeLimitError when |B|^{rD} exceeds 2^22.
DensityCoding density_coding(const TreeSpec& spec, const ClosureOperator& op, int base = 2);

// Validates a density coding without sweeping 2^V: S(p(v)) ⊆ S(v),
// S(c(v)) = Σ for every inner vertex, the roots cover Σ, |S(v)| <= D, and
// every f_v equals g_{S(v)}. Since f_X = g_{S(X)}, these give f_X = f_{cl(X)}.
ValidationReport validate_density_coding(const DensityCoding& coding, const TreeSpec& spec);

// H_f(X) = |S(X)|/D for a density coding.
BigRational density_entropy(const DensityCoding& coding, const TreeSpec& spec, Mask x);

}  // namespace closlab

#endif  // CLOSLAB_CODING_HPP_

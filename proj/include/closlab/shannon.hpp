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


#ifndef CLOSLAB_SHANNON_HPP_
#define CLOSLAB_SHANNON_HPP_

#include <cstdint>
#include <vector>

#include "closlab/closure.hpp"
#include "closlab/constructors.hpp"
#include "closlab/partition.hpp"
#include "closlab/rational.hpp"

namespace closlab {

// Reduced: one variable per closed set, bound rows r(C) <= irk(C), monotone
// rows on covering pairs, submodular rows on incomparable closed pairs added
// lazily. Full: one variable per subset and the elemental form of every axiom.
enum class ShannonMode { kReduced, kFull };

const char* shannon_mode_name(ShannonMode mode);

struct ShannonOptions {
  ShannonMode mode = ShannonMode::kReduced;
  std::size_t max_closed_sets = 4096;
  int full_mode_cap = 8;
  bool lexicographic_witness = true;
  std::uint64_t pivot_limit = 5'000'000;
};

struct ShannonResult {
  BigRational value;                 // SE(cl)
  std::vector<Mask> closed;          // sorted by bits
  std::vector<BigRational> witness;  // witness[i] = r(closed[i]); an optimal point
  ShannonMode mode = ShannonMode::kReduced;
  int variables = 0;
  int rows = 0;
  int separation_rounds = 0;
  std::uint64_t pivots = 0;

  // r(C) for a closed C. Throws std::out_of_range otherwise.
  const BigRational& at(Mask c) const;
};

ShannonResult shannon_entropy(const ClosureOperator& op, const ShannonOptions& options = {});

// A set function indexed by the subset mask.
using ShannonTable = std::vector<BigRational>;

// r(X) := r(cl(X)) from values on the closed sets.
ShannonTable extend_from_closed(const ClosureOperator& op, const std::vector<Mask>& closed,
                                const std::vector<BigRational>& values);
ShannonTable extend_from_closed(const ClosureOperator& op, const ShannonResult& result);

// Checks 0 <= r(X) <= |X|, monotonicity, submodularity over all pairs and
// r(X) = r(cl(X)). Rules: "bounds", "monotone", "submodular", "closure".
// Supports n <= 10.
ValidationReport verify_shannon_function(const ClosureOperator& op, const ShannonTable& values,
                                         bool all_witnesses = false);
// Same for entropies of a coding function; inexact values compare with tolerance.
ValidationReport verify_shannon_function(const ClosureOperator& op,
                                         const std::vector<Entropy>& values,
                                         bool all_witnesses = false);

// r(X) = 0 if cl(X) = cl(∅), else 1.
ShannonTable indicator_function(const ClosureOperator& op);

// cl_1 ⊻ cl_2 <= op <= cl_1 ∪ cl_2 with V_1 = {1..n_1}.
bool between_unions(const ClosureOperator& op, const ClosureOperator& op1,
                    const ClosureOperator& op2);

// r'(X) = r(X ∩ V_1) + r(X ∪ V_1) - r(V_1). Throws ValidationError when r' is
// not a Shannon function for op, not additive across the split, or
// r'(V) != r(V).
ShannonTable split_shannon(const ClosureOperator& op, const ShannonTable& values, Mask v1);

/// A family of closed sets, each with a generating set. Restricting any
/// Shannon function to the family satisfies r(C) <= |generator|, monotone rows
/// on comparable members and submodular rows on incomparable members whose
/// join and meet are also members, so the LP over these rows bounds SE from
/// above. Members need not be enumerated from 2^V, which keeps structured
/// operators with n > 20 in reach.
struct RelaxationFamily {
  std::vector<Mask> sets;
  std::vector<Mask> generators;  // cl(generators[i]) = sets[i]
};

struct RelaxationResult {
  BigRational value;  // >= SE(cl)
  std::vector<Mask> sets;
  std::vector<BigRational> witness;
  int rows = 0;
};

// Throws std::invalid_argument if a member is not closed, a generator does not
// generate it, or V or cl(∅) is missing.
RelaxationResult shannon_upper_bound(const ClosureOperator& op, const RelaxationFamily& family);

// Ancestries a(v), the closures of a(v) ∪ K for nonempty K ⊆ c(v), ∅ and V.
// Generators are the tree-maximal elements, and the roots for V.
RelaxationFamily density_relaxation_family(const TreeSpec& spec, const ClosureOperator& op);

struct DensityPinch {
  BigRational lower;  // H_f(V) of the density coding, from its partition
  BigRational upper;  // relaxation bound, >= SE >= entropy
  bool coding_valid = false;
  bool pinched = false;  // coding_valid && lower == upper
  int family_size = 0;
};

// Works for any n <= 62 as long as |B|^(rD) <= 2^22.
DensityPinch density_pinch(const TreeSpec& spec, const ClosureOperator& op, int base = 2);

}  // namespace closlab

#endif  // CLOSLAB_SHANNON_HPP_

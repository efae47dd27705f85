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

#ifndef CLOSLAB_CLOSURE_HPP_
#define CLOSLAB_CLOSURE_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "closlab/mask.hpp"

namespace closlab {

/// A total map 2^V -> 2^V that is meant to be a closure operator.
///
/// The axioms are not enforced on construction; validate_closure() decides
/// them. Three storage regimes share one interface and are observationally
/// identical:
///   - n <= kEagerTableSize: the table is filled at construction;
///   - n <= kMaxTableSize: entries are computed on first use and memoized
///     (lock-free, safe to read from several threads);
///   - n <= kMaxGroundSet: pure evaluator, no memo. Only operations that do
///     not sweep 2^V accept these.
///
/// Copies share the underlying immutable state.
class ClosureOperator {
 public:
  using Evaluator = std::function<Mask(Mask)>;

  ClosureOperator();
  ClosureOperator(int n, std::vector<Mask> table, std::string label = {});
  static ClosureOperator from_evaluator(int n, Evaluator eval, std::string label = {});

  int size() const;
  Mask ground() const { return full_mask(size()); }
  const std::string& label() const;
  bool tabulable() const { return size() <= kMaxTableSize; }

  // Unchecked evaluation; x must be a subset of ground().
  Mask operator()(Mask x) const;

  // Copy of the full table. Throws SizeLimitError when !tabulable().
  std::vector<Mask> materialize() const;

  ClosureOperator with_label(std::string label) const;

 private:
  struct State;
  explicit ClosureOperator(std::shared_ptr<const State> state);
  std::shared_ptr<const State> state_;
};

// cl(X) with a range check on X.
Mask closure_of(const ClosureOperator& op, Mask x);

// Throws SizeLimitError unless op.size() <= cap.
void require_size(const ClosureOperator& op, int cap, const char* what);

struct Violation {
  std::string rule;  // e.g. "extensive", "isotone", "idempotent"
  Mask subset = 0;   // the witness X
  Mask other = 0;    // second witness (Y, or the vertex bit v), if any
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;

  void add(Violation v) {
    valid = false;
    violations.push_back(std::move(v));
  }
};

struct ValidateOptions {
  bool all_witnesses = false;     // otherwise the first witness per axiom
  bool pairwise_isotone = false;  // full X ⊆ Y sweep instead of single-vertex steps
  int pair_sweep_cap = kDefaultPairSweepCap;
};

// Checks extensivity, isotonicity and idempotency over all of 2^V.
ValidationReport validate_closure(const ClosureOperator& op, const ValidateOptions& options = {});
ValidationReport validate_closure_table(int n, std::span<const Mask> table,
                                        const ValidateOptions& options = {});

struct RankAndBases {
  int rank = 0;
  std::vector<Mask> bases;  // every minimum-size b with cl(b) = V, sorted by bits
};

// Cardinality-ascending sweep; works for implicit operators as long as the
// rank is small.
RankAndBases rank_and_bases(const ClosureOperator& op);
int rank_of(const ClosureOperator& op);

// All X with cl(X) = X, sorted by bits.
std::vector<Mask> closed_sets(const ClosureOperator& op);

// cl1 <= cl2 pointwise. Throws std::invalid_argument on mismatched n.
bool operator_le(const ClosureOperator& lhs, const ClosureOperator& rhs);
// First X (by bits) with lhs(X) ⊄ rhs(X), or nullopt when lhs <= rhs.
std::optional<Mask> operator_le_counterexample(const ClosureOperator& lhs,
                                               const ClosureOperator& rhs);

bool same_table(const ClosureOperator& lhs, const ClosureOperator& rhs);

}  // namespace closlab

#endif  // CLOSLAB_CLOSURE_HPP_

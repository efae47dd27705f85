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


// Inner, outer, lower and upper ranks; flats and spans; matroid tests;
// complemented sets.
//
// Two routes compute every rank. The free functions (outer_rank, ...) sweep
// candidate sets by ascending cardinality for a single X and work on any
// operator whose rank is small. RankProfile tabulates all four ranks at once
// through subset transforms over 2^V (n <= 20).

#ifndef CLOSLAB_RANKS_HPP_
#define CLOSLAB_RANKS_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "closlab/closure.hpp"

namespace closlab {

struct RankValue {
  int value = 0;
  Mask witness = 0;  // least witness by bits among those of minimum size
};

// min{|b| : X ⊆ cl(b)}; the witness is an outer basis of X.
RankValue outer_rank(const ClosureOperator& op, Mask x);
// min{|b| : cl(b) = cl(X)}; the witness is an inner basis of X.
RankValue inner_rank(const ClosureOperator& op, Mask x);

struct LowerUpperRank {
  int lrk = 0;
  int urk = 0;
  Mask lrk_witness = 0;  // a minimum Y with cl(Y ∪ (V\X)) = V
};

LowerUpperRank lower_upper_rank(const ClosureOperator& op, Mask x);
// r - min{ork(Y) : cl(X ∪ Y) = V}, by sweeping every Y.
int upper_rank_alternate(const ClosureOperator& op, Mask x);

class RankProfile {
 public:
  explicit RankProfile(ClosureOperator op);

  const ClosureOperator& op() const { return op_; }
  int size() const { return op_.size(); }
  Mask ground() const { return op_.ground(); }
  int rank() const { return rank_; }

  int ork(Mask x) const { return ork_[x]; }
  int irk(Mask x) const { return irk_[x]; }
  int lrk(Mask x) const { return lrk_[x]; }
  int urk(Mask x) const { return rank_ - lrk_[ground() & ~x]; }
  // min{|Z| : Z ⊇ b, cl(Z) = V}: the size of the smallest spanning extension.
  int spanning_extension(Mask b) const { return spanning_[b]; }

  Mask span(Mask x) const;
  Mask upper_span(Mask x) const;
  bool is_flat(Mask f) const { return span(f) == f; }
  bool is_upper_flat(Mask f) const { return upper_span(f) == f; }

  // r - min{ork(F) : F flat, cl(X ∪ F) = V}.
  int upper_rank_via_flats(Mask x) const;

 private:
  ClosureOperator op_;
  int rank_ = 0;
  std::vector<std::int8_t> ork_, irk_, lrk_, spanning_;
};

// Sorted lists of flats, by the single-vertex criterion.
std::vector<Mask> flats(const RankProfile& profile);
std::vector<Mask> upper_flats(const RankProfile& profile);
// Flats straight from the definition: no strict superset has the same outer
// rank. Sweeps all pairs; n <= cap.
std::vector<Mask> flats_by_definition(const RankProfile& profile,
                                      int cap = kDefaultPairSweepCap);

// Single-X spans from the sweep route.
Mask span(const ClosureOperator& op, Mask x);
Mask upper_span(const ClosureOperator& op, Mask x);

struct ExchangeWitness {
  Mask x = 0;
  int u = 0;
  int v = 0;  // v ∈ cl(X ∪ u) \ cl(X) but u ∉ cl(X ∪ v)
};

std::optional<ExchangeWitness> exchange_counterexample(const ClosureOperator& op);

struct MatroidReport {
  bool exchange = true;
  std::optional<ExchangeWitness> exchange_witness;
  bool closed_eq_span = true;  // cl(X) = span(X) for all X
  Mask closed_eq_span_witness = 0;
  bool closed_are_spans = true;  // every closed set is span(Y) for some Y
  Mask closed_are_spans_witness = 0;
  bool upper_closed_eq_uspan = true;
  Mask upper_closed_eq_uspan_witness = 0;
  bool upper_closed_are_uspans = true;
  Mask upper_closed_are_uspans_witness = 0;

  bool consistent() const {
    return exchange == closed_eq_span && exchange == closed_are_spans &&
           exchange == upper_closed_eq_uspan && exchange == upper_closed_are_uspans;
  }
};

MatroidReport matroid_check(const RankProfile& profile);

struct ComplementedStatus {
  bool outer = false;  // ork(X) = urk(X)
  bool inner = false;  // irk(X) = urk(X)
  // Alternative characterizations, reported independently.
  bool outer_has_complement = false;  // ∃ Z ⊆ V\X: ork(X)+ork(Z) = r, cl(X ∪ Z) = V
  bool outer_bases_extend = false;    // every outer basis of X lies in a basis of V
  bool inner_via_outer = false;       // outer and irk(X) = ork(X)
  bool inner_bases_extend = false;    // every inner basis of X lies in a basis of V
};

ComplementedStatus complemented_status(const RankProfile& profile, Mask x);
bool is_outer_complemented(const RankProfile& profile);

// First pair (X, Y), X before Y by bits, with
// ork(X ∪ Y) + ork(X ∩ Y) > ork(X) + ork(Y). Sweeps all pairs; n <= cap.
std::optional<std::pair<Mask, Mask>> ork_submodularity_violation(
    const RankProfile& profile, int cap = kDefaultPairSweepCap);

// First X by bits that is outer complemented, whose span is outer
// complemented too and has larger outer rank. Its existence rules out
// solutions over every alphabet.
std::optional<Mask> unsolvability_obstruction(const RankProfile& profile);

enum class SpanVerdict {
  kNotApplicable,           // op is not outer complemented
  kUnsolvable,              // span is not a matroid of rank r
  kSolvableIffSpanSolvable  // span is a matroid of rank r
};

const char* span_verdict_name(SpanVerdict verdict);

struct SpanOperatorResult {
  ClosureOperator candidate;  // X -> span(X); not necessarily a closure operator
  ValidationReport report;
  bool is_matroid = false;
  int candidate_rank = -1;  // only when the candidate validates
  bool outer_complemented = false;
  SpanVerdict verdict = SpanVerdict::kNotApplicable;
};

SpanOperatorResult span_operator(const RankProfile& profile);

}  // namespace closlab

#endif  // CLOSLAB_RANKS_HPP_

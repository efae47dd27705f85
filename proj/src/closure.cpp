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

#include "closlab/closure.hpp"

#include <atomic>
#include <stdexcept>

namespace closlab {
namespace {

constexpr Mask kUnset = ~Mask{0};

}  // namespace

struct ClosureOperator::State {
  int n = 0;
  std::string label;
  std::vector<Mask> table;  // eager regime
  Evaluator eval;           // memoized and implicit regimes
  std::unique_ptr<std::atomic<Mask>[]> memo;

  Mask get(Mask x) const {
    if (!table.empty()) return table[x];
    if (memo) {
      Mask v = memo[x].load(std::memory_order_relaxed);
      if (v == kUnset) {
        v = eval(x);
        memo[x].store(v, std::memory_order_relaxed);
      }
      return v;
    }
    return eval(x);
  }
};

ClosureOperator::ClosureOperator() : ClosureOperator(0, std::vector<Mask>{0}, {}) {}

ClosureOperator::ClosureOperator(std::shared_ptr<const State> state) : state_(std::move(state)) {}

ClosureOperator::ClosureOperator(int n, std::vector<Mask> table, std::string label) {
  if (n < 0 || n > kMaxTableSize) {
    throw SizeLimitError("closure table needs 0 <= n <= " + std::to_string(kMaxTableSize));
  }
  if (table.size() != subset_count(n)) {
    throw std::invalid_argument("closure table must have 2^n entries");
  }
  const Mask ground = full_mask(n);
  for (Mask image : table) {
    if (!is_subset(image, ground)) throw std::invalid_argument("closure table entry outside V");
  }
  auto state = std::make_shared<State>();
  state->n = n;
  state->label = std::move(label);
  state->table = std::move(table);
  state_ = std::move(state);
}

ClosureOperator ClosureOperator::from_evaluator(int n, Evaluator eval, std::string label) {
  if (n < 0 || n > kMaxGroundSet) {
    throw SizeLimitError("ground set size must be at most " + std::to_string(kMaxGroundSet));
  }
  if (n <= kEagerTableSize) {
    std::vector<Mask> table(subset_count(n));
    for (Mask x = 0; x < table.size(); ++x) table[x] = eval(x);
    return ClosureOperator(n, std::move(table), std::move(label));
  }
  auto state = std::make_shared<State>();
  state->n = n;
  state->label = std::move(label);
  state->eval = std::move(eval);
  if (n <= kMaxTableSize) {
    state->memo = std::make_unique<std::atomic<Mask>[]>(subset_count(n));
    for (std::size_t i = 0; i < subset_count(n); ++i) state->memo[i].store(kUnset);
  }
  return ClosureOperator(std::shared_ptr<const State>(std::move(state)));
}

int ClosureOperator::size() const { return state_->n; }
const std::string& ClosureOperator::label() const { return state_->label; }
Mask ClosureOperator::operator()(Mask x) const { return state_->get(x); }

std::vector<Mask> ClosureOperator::materialize() const {
  require_size(*this, kMaxTableSize, "materializing a closure table");
  if (!state_->table.empty()) return state_->table;
  std::vector<Mask> out(subset_count(size()));
  for (Mask x = 0; x < out.size(); ++x) out[x] = state_->get(x);
  return out;
}

ClosureOperator ClosureOperator::with_label(std::string label) const {
  if (!state_->table.empty()) return ClosureOperator(size(), state_->table, std::move(label));
  return from_evaluator(size(), state_->eval, std::move(label));
}

Mask closure_of(const ClosureOperator& op, Mask x) {
  if (!is_subset(x, op.ground())) {
    throw std::out_of_range("subset " + format_subset(x) + " is not contained in V = {1.." +
                            std::to_string(op.size()) + "}");
  }
  return op(x);
}

void require_size(const ClosureOperator& op, int cap, const char* what) {
  if (op.size() > cap) {
    throw SizeLimitError(std::string(what) + " supports n <= " + std::to_string(cap) +
                         ", got n = " + std::to_string(op.size()));
  }
}

namespace {

template <class Cl>
ValidationReport validate_impl(int n, Cl&& cl, const ValidateOptions& options) {
  ValidationReport report;
  const Mask ground = full_mask(n);
  const Mask count = Mask{1} << n;
  bool seen_ext = false, seen_iso = false, seen_idem = false;
  auto want = [&](bool& seen) { return options.all_witnesses || !seen; };

  for (Mask x = 0; x < count; ++x) {
    const Mask cx = cl(x);
    if (!is_subset(x, cx) && want(seen_ext)) {
      seen_ext = true;
      report.add({"extensive", x, 0, format_subset(x) + " is not contained in its closure " +
                                         format_subset(cx)});
    }
    if (!is_subset(cx, ground) || cl(cx) != cx) {
      if (want(seen_idem)) {
        seen_idem = true;
        report.add({"idempotent", x, cx, "cl(cl(" + format_subset(x) + ")) != cl(" +
                                             format_subset(x) + ")"});
      }
    }
    if (!options.pairwise_isotone) {
      for (Mask rest = ground & ~x; rest != 0; rest &= rest - 1) {
        const Mask v = rest & (~rest + 1);
        if (!is_subset(cx, cl(x | v)) && want(seen_iso)) {
          seen_iso = true;
          report.add({"isotone", x, v, "cl(" + format_subset(x) + ") is not contained in cl(" +
                                           format_subset(x | v) + ")"});
        }
      }
    }
  }
  if (options.pairwise_isotone) {
    if (n > options.pair_sweep_cap) {
      throw SizeLimitError("pairwise isotonicity check supports n <= " +
                           std::to_string(options.pair_sweep_cap));
    }
    for (Mask x = 0; x < count; ++x) {
      const Mask cx = cl(x);
      const Mask rest = ground & ~x;
      // Enumerate every Y = X ∪ S with S ⊆ V \ X.
      for (Mask s = rest;; s = (s - 1) & rest) {
        if (!is_subset(cx, cl(x | s)) && want(seen_iso)) {
          seen_iso = true;
          report.add({"isotone", x, x | s, "cl(" + format_subset(x) +
                                               ") is not contained in cl(" +
                                               format_subset(x | s) + ")"});
        }
        if (s == 0) break;
      }
    }
  }
  return report;
}

}  // namespace

ValidationReport validate_closure(const ClosureOperator& op, const ValidateOptions& options) {
  require_size(op, kMaxTableSize, "validate_closure");
  return validate_impl(op.size(), op, options);
}

ValidationReport validate_closure_table(int n, std::span<const Mask> table,
                                        const ValidateOptions& options) {
  if (n > kMaxTableSize) throw SizeLimitError("validate_closure_table supports n <= 20");
  if (table.size() != subset_count(n)) {
    throw std::invalid_argument("closure table must have 2^n entries");
  }
  const Mask ground = full_mask(n);
  // Out-of-range images are reported as idempotency failures; clamp lookups.
  return validate_impl(n, [&](Mask x) { return is_subset(x, ground) ? table[x] : ground; }, options);
}

RankAndBases rank_and_bases(const ClosureOperator& op) {
  const int n = op.size();
  const Mask ground = op.ground();
  RankAndBases out;
  for (int k = 0; k <= n; ++k) {
    for_each_k_subset(n, k, [&](Mask b) {
      if (op(b) == ground) out.bases.push_back(b);
      return true;
    });
    if (!out.bases.empty()) {
      out.rank = k;
      return out;
    }
  }
  // Unreachable for a valid operator: cl(V) = V.
  throw std::logic_error("no subset has closure V; operator is not extensive at V");
}

int rank_of(const ClosureOperator& op) {
  const int n = op.size();
  const Mask ground = op.ground();
  for (int k = 0; k <= n; ++k) {
    const bool none = for_each_k_subset(n, k, [&](Mask b) { return op(b) != ground; });
    if (!none) return k;
  }
  throw std::logic_error("no subset has closure V; operator is not extensive at V");
}

std::vector<Mask> closed_sets(const ClosureOperator& op) {
  require_size(op, kMaxTableSize, "closed_sets");
  std::vector<Mask> out;
  for (Mask x = 0; x < subset_count(op.size()); ++x) {
    if (op(x) == x) out.push_back(x);
  }
  return out;
}

std::optional<Mask> operator_le_counterexample(const ClosureOperator& lhs,
                                               const ClosureOperator& rhs) {
  if (lhs.size() != rhs.size()) {
    throw std::invalid_argument("operator_le: ground sets differ (" + std::to_string(lhs.size()) +
                                " vs " + std::to_string(rhs.size()) + ")");
  }
  require_size(lhs, kMaxTableSize, "operator_le");
  for (Mask x = 0; x < subset_count(lhs.size()); ++x) {
    if (!is_subset(lhs(x), rhs(x))) return x;
  }
  return std::nullopt;
}

bool operator_le(const ClosureOperator& lhs, const ClosureOperator& rhs) {
  return !operator_le_counterexample(lhs, rhs).has_value();
}

bool same_table(const ClosureOperator& lhs, const ClosureOperator& rhs) {
  if (lhs.size() != rhs.size()) return false;
  require_size(lhs, kMaxTableSize, "same_table");
  for (Mask x = 0; x < subset_count(lhs.size()); ++x) {
    if (lhs(x) != rhs(x)) return false;
  }
  return true;
}

}  // namespace closlab

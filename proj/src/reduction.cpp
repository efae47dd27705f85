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

#include "closlab/reduction.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <stdexcept>

#include "closlab/errors.hpp"

namespace closlab {

SetOperator::SetOperator(int n, std::vector<Mask> table, std::string label)
    : n_(n), table_(std::move(table)), label_(std::move(label)) {
  if (n < 0 || n > kMaxTableSize) {
    throw SizeLimitError("set operator needs 0 <= n <= " + std::to_string(kMaxTableSize));
  }
  if (table_.size() != subset_count(n)) {
    throw std::invalid_argument("set operator table must have 2^n entries");
  }
  for (Mask image : table_) {
    if (!is_subset(image, ground())) throw std::invalid_argument("set operator entry outside V");
  }
}

SetOperator SetOperator::of(const ClosureOperator& op) {
  return SetOperator(op.size(), op.materialize(), op.label());
}

SetOperator random_set_operator(int n, std::uint64_t seed) {
  if (n < 0 || n > kMaxReductionSize) {
    throw std::invalid_argument("random_set_operator needs 0 <= n <= 10");
  }
  std::mt19937_64 rng(seed);
  std::vector<Mask> table(subset_count(n));
  for (Mask& image : table) image = rng() & full_mask(n);
  return SetOperator(n, std::move(table),
                     "random_set_operator(" + std::to_string(n) + ", " + std::to_string(seed) + ")");
}

Reduction reduce_to_closure(const SetOperator& a) {
  const int n = a.size();
  if (n > kMaxReductionSize) {
    throw SizeLimitError("reduce_to_closure supports n <= " + std::to_string(kMaxReductionSize));
  }
  const std::size_t count = subset_count(n);
  ReductionTrace trace;

  // Step 1: weak components of the functional graph.
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Mask y = 0; y < count; ++y) {
    std::size_t u = find(y), v = find(a(y));
    if (u != v) parent[std::max(u, v)] = std::min(u, v);
  }
  std::vector<Mask> members(count, 0), images(count, 0);
  trace.component.resize(count);
  for (Mask x = 0; x < count; ++x) {
    const std::size_t root = find(x);
    trace.component[x] = static_cast<int>(root);
    members[root] |= x;
    images[root] |= a(x);
  }
  trace.b.resize(count);
  for (Mask x = 0; x < count; ++x) {
    const std::size_t root = find(x);
    trace.b[x] = members[root];
    if (!trace.union_of_images_not_extensive && !is_subset(x, images[root])) {
      trace.union_of_images_not_extensive = x;
    }
  }

  // Step 2: c(X) = b(X) ∪ c(X \ v) over v ∈ X, by increasing X.
  trace.c.resize(count);
  for (Mask x = 0; x < count; ++x) {
    Mask out = trace.b[x];
    for (Mask rest = x; rest != 0; rest &= rest - 1) out |= trace.c[x & ~(rest & (~rest + 1))];
    trace.c[x] = out;
  }

  // Step 3: powers of c until c(c^k(X)) = c^k(X) everywhere.
  std::vector<Mask> cur = trace.c;
  trace.powers.push_back(cur);
  while (true) {
    bool stable = true;
    for (Mask x = 0; x < count; ++x) {
      if (trace.c[cur[x]] != cur[x]) stable = false;
    }
    if (stable) break;
    for (Mask x = 0; x < count; ++x) cur[x] = trace.c[cur[x]];
    trace.powers.push_back(cur);
    if (static_cast<int>(trace.powers.size()) > std::max(n, 1)) {
      throw std::logic_error("reduce_to_closure: no fixpoint after n powers of c");
    }
  }
  trace.iterations = static_cast<int>(trace.powers.size());

  std::string label = a.label().empty() ? "reduced" : "reduce(" + a.label() + ")";
  ClosureOperator closure(n, cur, std::move(label));
  return {std::move(closure), std::move(trace)};
}

std::vector<CodingTuple> enumerate_coding_functions(const SetOperator& a, int q, int m,
                                                    const EnumerateOptions& options) {
  if (q < 1 || m < 1) throw std::invalid_argument("enumerate_coding_functions needs q, m >= 1");
  const int n = a.size();
  if (n > kMaxReductionSize) {
    throw SizeLimitError("enumerate_coding_functions supports n <= " +
                         std::to_string(kMaxReductionSize));
  }
  const std::vector<Partition> cands = canonical_partitions(m, q);
  std::uint64_t space = 1;
  for (int v = 0; v < n; ++v) {
    if (space > options.budget / cands.size()) {
      throw BudgetExceeded("enumerate_coding_functions: " + std::to_string(cands.size()) + "^" +
                           std::to_string(n) + " tuples exceed the budget of " +
                           std::to_string(options.budget));
    }
    space *= cands.size();
  }

  // Constraint X is checked once every vertex of X ∪ a(X) is assigned, i.e.
  // at the depth of its highest vertex.
  const std::size_t count = subset_count(n);
  std::vector<std::vector<Mask>> checks(static_cast<std::size_t>(n) + 1);
  for (Mask x = 0; x < count; ++x) {
    if (a(x) != x) checks[std::bit_width(x | a(x))].push_back(x);
  }
  std::vector<CodingTuple> out;

  std::vector<Partition> f(count);
  f[0] = Partition::universal(m);
  std::vector<int> choice(static_cast<std::size_t>(n));
  auto dfs = [&](auto&& self, int v) -> void {
    if (v == n) {
      CodingTuple t;
      for (int i = 0; i < n; ++i) t.push_back(cands[choice[i]]);
      out.push_back(std::move(t));
      return;
    }
    const Mask bit = Mask{1} << v;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      choice[v] = static_cast<int>(k);
      for (Mask low = 0; low < bit; ++low) join_into(f[low], cands[k], f[low | bit]);
      bool ok = true;
      for (Mask x : checks[v + 1]) {
        if (!(f[a(x)] == f[x])) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, v + 1);
    }
  };
  dfs(dfs, 0);
  return out;
}

bool operators_equivalent(const SetOperator& a, const SetOperator& a2, int q, int m,
                          const EnumerateOptions& options) {
  if (a.size() != a2.size()) {
    throw std::invalid_argument("operators_equivalent: ground sets differ");
  }
  return enumerate_coding_functions(a, q, m, options) ==
         enumerate_coding_functions(a2, q, m, options);
}

}  // namespace closlab

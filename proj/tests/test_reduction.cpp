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

#include <algorithm>
#include <random>
#include <stdexcept>

#include "closlab/constructors.hpp"
#include "closlab/errors.hpp"
#include "closlab/reduction.hpp"
#include "doctest.h"

namespace closlab {
namespace {

// Plain product enumeration, every f_X joined from scratch.
std::vector<CodingTuple> brute_force(const SetOperator& a, int q, int m) {
  const std::vector<Partition> cands = canonical_partitions(m, q);
  const int n = a.size();
  std::vector<CodingTuple> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  auto join_of = [&](const CodingTuple& t, Mask x) {
    Partition p = Partition::universal(m);
    for (int v = 1; v <= n; ++v) {
      if (has_vertex(x, v)) p = join_partitions(p, t[v - 1]);
    }
    return p;
  };
  while (true) {
    CodingTuple t;
    for (std::size_t i : idx) t.push_back(cands[i]);
    bool ok = true;
    for (Mask x = 0; x <= a.ground() && ok; ++x) ok = join_of(t, a(x)) == join_of(t, x);
    if (ok) out.push_back(t);
    int k = n - 1;
    while (k >= 0 && ++idx[k] == cands.size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

SetOperator as_setop(const std::vector<Mask>& table) {
  int n = 0;
  while (subset_count(n) < table.size()) ++n;
  return SetOperator(n, table);
}

TEST_CASE("coding-function enumeration examples") {
  // Identity on two vertices: no constraint binds.
  CHECK(enumerate_coding_functions(SetOperator::of(uniform(2, 2)), 2, 3).size() == 16);
  // Constant V forces every f_v to be universal.
  const SetOperator full = as_setop({3, 3, 3, 3});
  const auto all_universal = enumerate_coding_functions(full, 2, 3);
  REQUIRE(all_universal.size() == 1);
  CHECK(all_universal[0] == CodingTuple{Partition::universal(3), Partition::universal(3)});
  // a(∅) = {1}, a({1}) = ∅ forces f_1 universal.
  const auto swap = enumerate_coding_functions(as_setop({1, 0}), 2, 3);
  REQUIRE(swap.size() == 1);
  CHECK(swap[0][0] == Partition::universal(3));

  CHECK_FALSE(operators_equivalent(SetOperator::of(uniform(1, 2)), SetOperator::of(uniform(2, 2)),
                                   2, 3));
  const SetOperator a = random_set_operator(3, 5);
  CHECK(operators_equivalent(a, a, 2, 3));
  CHECK_THROWS_AS(operators_equivalent(a, full, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_coding_functions(random_set_operator(8, 1), 2, 4), BudgetExceeded);
}

TEST_CASE("enumeration matches brute force") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = static_cast<int>(rng() % 4);
    const int q = 2 + static_cast<int>(rng() % 2);
    const int m = 2 + static_cast<int>(rng() % 2);
    const SetOperator a = random_set_operator(n, rng());
    const auto got = enumerate_coding_functions(a, q, m);
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(got == brute_force(a, q, m));
  }
}

TEST_CASE("reduction examples") {
  // Constant V.
  const Reduction constant = reduce_to_closure(as_setop({7, 7, 7, 7, 7, 7, 7, 7}));
  for (Mask x = 0; x < 8; ++x) CHECK(constant.closure(x) == 7);

  // a(∅) = {1}, a({1}) = ∅: one component.
  const Reduction swap = reduce_to_closure(as_setop({1, 0}));
  CHECK(swap.closure(0) == 1);
  CHECK(swap.closure(1) == 1);
  CHECK(swap.trace.component[0] == swap.trace.component[1]);

  // a ≡ ∅: the union of images alone is not extensive at {1}; the union of
  // members is, and keeps f_1 universal.
  const SetOperator empty = as_setop({0, 0});
  const Reduction r = reduce_to_closure(empty);
  REQUIRE(r.trace.union_of_images_not_extensive.has_value());
  CHECK(*r.trace.union_of_images_not_extensive == 1);
  CHECK(r.trace.b == std::vector<Mask>{1, 1});
  CHECK(operators_equivalent(empty, SetOperator::of(r.closure), 2, 3));
  // X ∪ (union of images) would be the identity here, which admits more.
  CHECK_FALSE(operators_equivalent(empty, as_setop({0, 1}), 2, 3));

  // A closure operator comes back unchanged.
  const ClosureOperator c = random_moore(3, 9);
  CHECK(same_table(reduce_to_closure(SetOperator::of(c)).closure, c));

  CHECK_THROWS_AS(reduce_to_closure(SetOperator(11, std::vector<Mask>(subset_count(11)))),
                  SizeLimitError);
}

TEST_CASE("reduction yields equivalent closure operators") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const SetOperator a = random_set_operator(n, rng());
    const Reduction red = reduce_to_closure(a);
    CAPTURE(a.label());
    CHECK(validate_closure(red.closure).valid);
    CHECK(operators_equivalent(a, SetOperator::of(red.closure), 2, 3));
  }
}

TEST_CASE("every reduction step preserves the coding functions") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const SetOperator a = random_set_operator(n, rng());
    const Reduction red = reduce_to_closure(a);
    const ReductionTrace& t = red.trace;
    CAPTURE(a.label());
    for (auto [q, m] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 4}}) {
      const auto want = enumerate_coding_functions(a, q, m);
      CHECK(enumerate_coding_functions(SetOperator(n, t.b), q, m) == want);
      CHECK(enumerate_coding_functions(SetOperator(n, t.c), q, m) == want);
      for (const auto& power : t.powers) {
        CHECK(enumerate_coding_functions(SetOperator(n, power), q, m) == want);
      }
    }
    // c is extensive and isotone; the fixpoint takes at most n powers.
    for (Mask x = 0; x <= a.ground(); ++x) {
      CHECK(is_subset(x, t.c[x]));
      for (Mask y = x;; y = (y + 1) | x) {
        CHECK(is_subset(t.c[x], t.c[y]));
        if (y == a.ground()) break;
      }
    }
    CHECK(t.iterations >= 1);
    CHECK(t.iterations <= n);
    CHECK(t.powers.back() == red.closure.materialize());
  }
}

TEST_CASE("reduction is idempotent up to equivalence") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const SetOperator a = random_set_operator(1 + static_cast<int>(rng() % 3), rng());
    const ClosureOperator once = reduce_to_closure(a).closure;
    const ClosureOperator twice = reduce_to_closure(SetOperator::of(once)).closure;
    CHECK(operators_equivalent(SetOperator::of(once), SetOperator::of(twice), 2, 3));
    CHECK(operators_equivalent(SetOperator::of(once), SetOperator::of(twice), 3, 3));
    // On a closure operator the components are the preimages of the closed
    // sets, so the reduction returns the same table.
    CHECK(same_table(once, twice));
  }
}

}  // namespace
}  // namespace closlab

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

#include "closlab/constructors.hpp"
#include "closlab/ranks.hpp"
#include "doctest.h"
#include "fixtures.hpp"

namespace closlab {
namespace {

Digraph random_digraph(int n, std::mt19937_64& rng, double p) {
  std::uniform_real_distribution<double> coin(0, 1);
  Digraph d(n);
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      if (coin(rng) < p) d.add_arc(u, v);
    }
  }
  return d;
}

// Minimum feedback vertex set by brute force over all vertex sets.
int min_feedback_vertex_set(const Digraph& d) {
  const int n = d.size();
  int best = n;
  for (Mask s = 0; s < subset_count(n); ++s) {
    // Does V\S induce an acyclic graph? Peel sources repeatedly.
    Mask left = full_mask(n) & ~s;
    for (bool progress = true; progress;) {
      progress = false;
      for (int v = 1; v <= n; ++v) {
        if (has_vertex(left, v) && (d.in_neighbors(v) & left) == 0) {
          left &= ~vertex_bit(v);
          progress = true;
        }
      }
    }
    if (left == 0) best = std::min(best, cardinality(s));
  }
  return best;
}

TEST_CASE("uniform") {
  CHECK(uniform(0, 3)(0) == 0b111);
  const ClosureOperator u24 = uniform(2, 4);
  CHECK(u24(mask_of({1})) == mask_of({1}));
  CHECK(u24(mask_of({1, 3})) == 0b1111);
  const ClosureOperator id = uniform(5, 5);
  for (Mask x = 0; x < 32; ++x) CHECK(id(x) == x);
  CHECK_THROWS_AS(uniform(4, 3), std::invalid_argument);
  for (int n = 0; n <= 6; ++n) {
    for (int r = 0; r <= n; ++r) {
      CHECK(validate_closure(uniform(r, n)).valid);
      CHECK(rank_of(uniform(r, n)) == r);
    }
  }
}

TEST_CASE("digraph construction rejects bad arcs") {
  Digraph d(3);
  d.add_arc(1, 2);
  CHECK_THROWS_AS(d.add_arc(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(d.add_arc(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(d.add_arc(1, 4), std::invalid_argument);
  d.add_arc(3, 3);
  CHECK(d.in_neighbors(3) == mask_of({3}));
  CHECK(d.arcs().size() == 2);
}

TEST_CASE("D-closure classifications") {
  for (int n = 3; n <= 5; ++n) {
    CHECK(same_table(from_digraph(Digraph(n)), uniform(0, n)));
    CHECK(same_table(from_digraph(directed_cycle(n)), uniform(1, n)));
    CHECK(same_table(from_digraph(complete_digraph(n)), uniform(n - 1, n)));
    CHECK(same_table(from_digraph(all_loops(n)), uniform(n, n)));
  }
  CHECK(same_table(from_digraph(all_loops(1)), uniform(1, 1)));
  // A path is acyclic.
  CHECK(same_table(from_digraph(Digraph(4, {{1, 2}, {2, 3}, {3, 4}})), uniform(0, 4)));
}

TEST_CASE("fixpoint D-closure matches the brute-force maximizer") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const Digraph d = random_digraph(n, rng, 0.1 + 0.5 * static_cast<double>(trial % 5) / 5);
    const ClosureOperator fix = from_digraph(d);
    CHECK(same_table(fix, dclosure_bruteforce(d)));
    CHECK(validate_closure(fix).valid);
    CHECK(rank_of(fix) == min_feedback_vertex_set(d));
  }
}

TEST_CASE("adding an arc never enlarges a D-closure") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Digraph d = random_digraph(n, rng, 0.25);
    const ClosureOperator before = from_digraph(d);
    int u = 0, v = 0;
    do {
      u = 1 + static_cast<int>(rng() % n);
      v = 1 + static_cast<int>(rng() % n);
    } while (d.has_arc(u, v) && d.arcs().size() < static_cast<std::size_t>(n * n));
    if (d.has_arc(u, v)) continue;
    d.add_arc(u, v);
    CHECK(operator_le(from_digraph(d), before));
  }
}

TEST_CASE("chain") {
  const ClosureOperator c = chain(3);
  CHECK(c(mask_of({2})) == mask_of({1, 2}));
  CHECK(c(mask_of({3})) == 0b111);
  CHECK(c(0) == 0);
  CHECK(rank_of(c) == 1);
  CHECK(validate_closure(chain(1)).valid);
  for (int n = 1; n <= 8; ++n) CHECK(validate_closure(chain(n)).valid);
}

TEST_CASE("union examples") {
  const ClosureOperator u12 = uniform(1, 2);
  CHECK(rank_of(union_combine(u12, u12, UnionKind::kDisjoint)) == 2);
  CHECK(rank_of(union_combine(u12, u12, UnionKind::kBidirectional)) == 3);
  CHECK(rank_of(union_combine(u12, u12, UnionKind::kUnidirectional)) == 2);

  // X1 = {1} does not span V1 under U_{2,2}: cl(X) = cl_1(X1) ∪ X2.
  const ClosureOperator uni = union_combine(uniform(2, 2), uniform(0, 2), UnionKind::kUnidirectional);
  CHECK(uni(mask_of({1, 3})) == mask_of({1, 3}));
  CHECK(uni(mask_of({1, 2})) == 0b1111);
}

TEST_CASE("unions of random operators validate and obey the rank formulas") {
  int uni_min_form_failures = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n1 = 1 + static_cast<int>(seed % 4);
    const int n2 = 1 + static_cast<int>((seed / 4) % 4);
    const RankProfile p1(random_moore(n1, seed * 2 + 1));
    const RankProfile p2(random_moore(n2, seed * 2 + 2));
    const int r1 = p1.rank(), r2 = p2.rank();
    const Mask v1 = full_mask(n1), v2 = full_mask(n2);
    for (UnionKind kind : {UnionKind::kDisjoint, UnionKind::kUnidirectional, UnionKind::kBidirectional}) {
      const ClosureOperator u = union_combine(p1.op(), p2.op(), kind);
      REQUIRE(validate_closure(u).valid);
      const RankProfile p(u);
      const int r = p.rank();
      CHECK(r == (kind == UnionKind::kBidirectional ? std::min(n1 + r2, n2 + r1) : r1 + r2));
      for (Mask x = 0; x <= p.ground(); ++x) {
        const Mask x1 = x & v1, x2 = x >> n1;
        const int s1 = cardinality(x1), s2 = cardinality(x2);
        switch (kind) {
          case UnionKind::kDisjoint:
            CHECK(p.ork(x) == p1.ork(x1) + p2.ork(x2));
            CHECK(p.irk(x) == p1.irk(x1) + p2.irk(x2));
            CHECK(p.urk(x) == p1.urk(x1) + p2.urk(x2));
            CHECK(p.lrk(x) == p1.lrk(x1) + p2.lrk(x2));
            break;
          case UnionKind::kUnidirectional: {
            CHECK(p.ork(x) == std::min(r1 + p2.ork(x2), p1.ork(x1) + s2));
            const int irk_case = p1.op()(x1) == v1 ? r1 + p2.irk(x2) : p1.irk(x1) + s2;
            CHECK(p.irk(x) == irk_case);
            uni_min_form_failures += p.irk(x) != std::min(r1 + p2.irk(x2), p1.irk(x1) + s2);
            CHECK(p.urk(x) == p1.urk(x1) + p2.urk(x2));
            CHECK(p.lrk(x) == p1.lrk(x1) + p2.lrk(x2));
            break;
          }
          case UnionKind::kBidirectional: {
            CHECK(p.ork(x) == std::min({n1 + p2.ork(x2), n2 + p1.ork(x1), s1 + s2}));
            int irk = s1 + s2;
            if (u(x) == p.ground()) {
              irk = std::min(n1 + r2, n2 + r1);
            } else if (x1 == v1 && p2.op()(x2) != v2) {
              irk = n1 + p2.irk(x2);
            } else if (x2 == v2 && p1.op()(x1) != v1) {
              irk = n2 + p1.irk(x1);
            }
            CHECK(p.irk(x) == irk);
            CHECK(p.urk(x) == r - std::min(n1 - s1 + r2 - p2.urk(x2), n2 - s2 + r1 - p1.urk(x1)));
            CHECK(p.lrk(x) == std::min(s1 + p2.lrk(x2), s2 + p1.lrk(x1)));
            break;
          }
        }
      }
    }
  }
  // The min{r1 + irk2, irk1 + |X2|} form is not an identity.
  CHECK(uni_min_form_failures > 0);
}

TEST_CASE("unidirectional inner rank: frozen counterexample to the min form") {
  // cl1 = chain(2) has rank 1 and {1} is closed with irk 1; cl2 = U_{0,1}.
  // At X = {1,3} the min form gives min{1 + 0, 1 + 1} = 1, the true value is 2.
  const ClosureOperator u = union_combine(chain(2), uniform(0, 1), UnionKind::kUnidirectional);
  const RankProfile p(u);
  CHECK(u(mask_of({1, 3})) == mask_of({1, 3}));
  CHECK(p.irk(mask_of({1, 3})) == 2);
  CHECK(inner_rank(u, mask_of({1, 3})).value == 2);
}

std::int64_t falling(int c, int k) {
  std::int64_t out = 1;
  for (int i = 0; i < k; ++i) out *= c - i;
  return out;
}

void check_tree_shape(const TreeSpec& spec) {
  for (int t = 0; t < spec.r; ++t) {
    for (int k = 0; k <= spec.L[t]; ++k) {
      std::int64_t count = 0;
      for (int v = 1; v <= spec.size(); ++v) count += spec.tree[v - 1] == t + 1 && spec.level[v - 1] == k;
      CHECK(count == falling(spec.C[t], k));
    }
    for (int v = 1; v <= spec.size(); ++v) {
      if (spec.tree[v - 1] == t + 1 && spec.L[t] > 0 && spec.level[v - 1] == spec.L[t] - 1) {
        CHECK(cardinality(spec.children[v - 1]) == spec.C[t] - spec.L[t] + 1);
      }
    }
  }
}

TEST_CASE("density tree at H = 3/2") {
  const auto [op, spec] = density_tree(2, BigRational(3, 2));
  CHECK(spec.D == 2);
  CHECK(spec.N == std::vector<int>{1, 2});
  CHECK(spec.L == std::vector<int>{1, 0});
  CHECK(spec.C == std::vector<int>{2, 1});
  CHECK(spec.sigma == 3);
  CHECK(op.size() == 4);
  CHECK(spec.roots == std::vector<int>{1, 4});
  CHECK(validate_closure(op).valid);
  CHECK(rank_of(op) == 2);
  // Leaves 2 and 3 hang off root 1; vertex 4 is the second tree.
  CHECK(op(mask_of({2})) == mask_of({1, 2}));
  CHECK(op(mask_of({3})) == mask_of({1, 3}));
  CHECK(op(mask_of({2, 3})) == 0b1111);
  CHECK(op(mask_of({1, 4})) == 0b1111);
  CHECK(op(mask_of({1})) == mask_of({1}));
  check_tree_shape(spec);
  CHECK(validate_tree_structure(spec, op).valid);
}

TEST_CASE("density tree parameters for the other targets") {
  {
    const auto [op, spec] = density_tree(2, BigRational(7, 4));
    CHECK(spec.D == 4);
    CHECK(spec.N == std::vector<int>{3, 4});
    CHECK(op.size() == 6);
    CHECK(validate_closure(op).valid);
    CHECK(rank_of(op) == 2);
    check_tree_shape(spec);
    CHECK(validate_tree_structure(spec, op).valid);
  }
  {
    const auto [op, spec] = density_tree(2, BigRational(5, 4));
    CHECK(spec.D == 4);
    CHECK(spec.N == std::vector<int>{1, 4});
    CHECK(spec.L == std::vector<int>{3, 0});
    CHECK(spec.C == std::vector<int>{4, 1});
    CHECK(op.size() == 42);
    CHECK_FALSE(op.tabulable());
    CHECK(rank_of(op) == 2);
    check_tree_shape(spec);
    CHECK(validate_tree_structure(spec, op).valid);
  }
  {
    const auto [op, spec] = density_tree(2, BigRational(2));
    CHECK(spec.degenerate);
    CHECK(same_table(op, uniform(2, 2)));
    CHECK(validate_tree_structure(spec, op).valid);
  }
  {
    // D = 2 cannot split D(H-1) = 3 into one part below D; D = 4 can.
    const auto [op, spec] = density_tree(3, BigRational(5, 2));
    CHECK(spec.D == 4);
    CHECK(spec.N == std::vector<int>{3, 3, 4});
    CHECK(op.size() == 17);
    CHECK(validate_closure(op).valid);
    CHECK(rank_of(op) == 3);
    check_tree_shape(spec);
    CHECK(validate_tree_structure(spec, op).valid);
  }
  CHECK_THROWS_AS(density_tree(2, BigRational(1)), std::invalid_argument);
  CHECK_THROWS_AS(density_tree(2, BigRational(5, 2)), std::invalid_argument);
  CHECK_THROWS_AS(density_tree(1, BigRational(1)), std::invalid_argument);
  CHECK_THROWS_AS(density_tree(2, BigRational(9, 8)), SizeLimitError);
}

TEST_CASE("structural tree check agrees with the exhaustive one") {
  for (const auto& h : {BigRational(3, 2), BigRational(4, 3), BigRational(5, 3), BigRational(7, 4),
                        BigRational(2)}) {
    const auto [op, spec] = density_tree(2, h);
    CHECK(validate_tree_structure(spec, op).valid == validate_closure(op).valid);
    CHECK(validate_tree_structure(spec, op).valid);
  }
  // A tampered operator: drop the "meets every tree" trigger.
  auto [op, spec] = density_tree(2, BigRational(3, 2));
  const ClosureOperator broken = ClosureOperator::from_evaluator(
      4, [s = spec](Mask x) { return s.ancestry_of(x); });
  CHECK_FALSE(validate_tree_structure(spec, broken).valid);
}

TEST_CASE("moore closures") {
  CHECK(same_table(moore_closure(3, {}), uniform(0, 3)));
  std::vector<Mask> all;
  for (Mask x = 0; x < 16; ++x) all.push_back(x);
  CHECK(same_table(moore_closure(4, all), uniform(4, 4)));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 1 + static_cast<int>(seed % 7);
    const ClosureOperator op = random_moore(n, seed);
    CHECK(validate_closure(op).valid);
    CHECK(same_table(op, random_moore(n, seed)));
  }
  CHECK_THROWS_AS(random_moore(11, 0), std::invalid_argument);
}

}  // namespace
}  // namespace closlab

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


#include <cmath>
#include <stdexcept>

#include "closlab/coding.hpp"
#include "closlab/errors.hpp"
#include "closlab/ranks.hpp"
#include "doctest.h"
#include "fixtures.hpp"

namespace closlab {
namespace {

Entropy exact(std::int64_t num, std::int64_t den = 1) { return Entropy::of(BigRational(num, den)); }

CodingFunction all_universal(const ClosureOperator& op, int q) {
  const int r = rank_of(op);
  CodingFunction f{op, q, r, {}};
  for (int v = 0; v < op.size(); ++v) f.parts.push_back(Partition::universal(*checked_power(q, r)));
  return f;
}

TEST_CASE("join examples") {
  const Partition f = Partition::parse_rgs("0011");
  const Partition g = Partition::parse_rgs("0101");
  CHECK(join_partitions(f, f) == f);
  CHECK(join_partitions(f, g) == Partition::equality(4));
  CHECK(join_partitions(f, Partition::universal(4)) == f);
  CHECK(join_partitions(f, g) == join_partitions(g, f));
  const Partition h = Partition::parse_rgs("0120");
  CHECK(join_partitions(join_partitions(f, g), h) == join_partitions(f, join_partitions(g, h)));
  CHECK_THROWS_AS(join_partitions(f, Partition::universal(3)), std::invalid_argument);
  CHECK(coordinate_partition(2, 2, 0) == Partition::parse_rgs("0101"));
  CHECK(coordinate_partition(2, 2, 1) == Partition::parse_rgs("0011"));
}

TEST_CASE("partition entropy values") {
  CHECK(partition_entropy(Partition::equality(8), 2, 3) == exact(3));
  CHECK(partition_entropy(Partition::universal(9), 3, 2) == exact(0));
  CHECK(partition_entropy(Partition::parse_rgs("0011"), 2, 2) == exact(1));
  CHECK(partition_entropy(Partition::parse_rgs("00001123"), 2, 3) == exact(7, 4));
  // Part sizes 2 and 1 of a carrier 3: not a power of 3, so only approximate.
  const Entropy h = partition_entropy(Partition::parse_rgs("001"), 3, 1);
  CHECK_FALSE(h.exact.has_value());
  CHECK(h.approx == doctest::Approx(1.0 - 2.0 / 3.0 * std::log(2.0) / std::log(3.0)));
  CHECK_THROWS_AS(partition_entropy(Partition::equality(5), 2, 2), std::invalid_argument);
}

TEST_CASE("entropy lies in [0, r] and only the equality partition reaches r") {
  for (auto [q, r] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {4, 1},
                                                      {5, 1}, {6, 1}, {7, 1}, {8, 1}}) {
    const int m = static_cast<int>(*checked_power(q, r));
    for (const Partition& p : canonical_partitions(m, m)) {
      const Entropy h = partition_entropy(p, q, r);
      CHECK(h >= exact(0));
      CHECK(h <= exact(r));
      CHECK((h == exact(r)) == (p == Partition::equality(m)));
    }
  }
}

TEST_CASE("C4 coding functions") {
  for (int q : {2, 3}) {
    const CodingFunction f = c4_solution(q);
    CHECK(coding_validate(f).valid);
    CHECK(is_solution(f));
    CHECK(entropy_of(f, f.op.ground()) == exact(2));
    CHECK(entropy_of(f, mask_of({1, 2})) == exact(1));
    CHECK(f.op(mask_of({1})) == mask_of({1}));
  }
  const ValidationReport literal = coding_validate(c4_literal_assignment(2));
  REQUIRE_FALSE(literal.valid);
  CHECK(literal.violations.front().rule == "closure");
  CHECK(literal.violations.front().subset == mask_of({1, 3}));

  const ClosureOperator cl_f = induced_closure(c4_solution(2));
  CHECK(cl_f(mask_of({1})) == mask_of({1, 2}));
  CHECK(operator_le(fixtures::c4(), cl_f));
  CHECK_THROWS_AS(induced_closure(c4_literal_assignment(2)), ValidationError);
}

TEST_CASE("all-universal coding functions") {
  for (const ClosureOperator& op : {fixtures::c4(), fixtures::c5(), uniform(2, 3)}) {
    const CodingFunction f = all_universal(op, 2);
    CHECK(coding_validate(f).valid);
    CHECK_FALSE(is_solution(f));
    CHECK(entropy_of(f, op.ground()) == exact(0));
    const ClosureOperator cl_f = induced_closure(f);
    for (Mask x = 0; x <= op.ground(); ++x) CHECK(cl_f(x) == op.ground());
    const RankProfile profile(op);
    const std::vector<Entropy> table = entropy_table(f);
    for (Mask x = 0; x <= op.ground(); ++x) {
      const CodingRankBounds b = coding_rank_bounds(f, table, profile, x);
      CHECK(b.chain_holds);
      CHECK(b.urk_f == exact(0));
      CHECK(b.lrk_f == exact(0));
    }
  }
}

TEST_CASE("coding_validate rules") {
  CodingFunction f = c4_solution(2);
  f.parts[0] = Partition::equality(4);
  ValidationReport report = coding_validate(f, true);
  REQUIRE_FALSE(report.valid);
  CHECK(report.violations.front().rule == "part-count");
  CHECK(report.violations.front().subset == mask_of({1}));

  f = c4_solution(2);
  f.parts[2] = Partition::universal(8);
  report = coding_validate(f);
  REQUIRE_FALSE(report.valid);
  CHECK(report.violations.front().rule == "carrier");
}

TEST_CASE("exhaustive search on small uniform operators") {
  SolveOptions options;
  options.collect_solutions = true;
  SolveResult u12 = solve_exhaustive(uniform(1, 2), 2, options);
  CHECK(u12.complete);
  CHECK(u12.search_space == 4);
  CHECK(u12.best == exact(1));
  REQUIRE(u12.solutions.size() == 1);
  CHECK(u12.solutions[0].parts[0] == u12.solutions[0].parts[1]);

  const SolveResult u13 = solve_exhaustive(uniform(1, 3), 2, options);
  CHECK(u13.complete);
  CHECK(u13.best == exact(1));
  CHECK(u13.solutions.size() == 1);

  const SolveResult u23 = solve_exhaustive(uniform(2, 3), 2, options);
  CHECK(u23.complete);
  CHECK(u23.best == exact(2));
  // Three distinct 2-part partitions of A^2, one per vertex, each pairwise
  // join the equality partition: 3! orderings.
  CHECK(u23.solutions.size() == 6);

  // U_{2,4} is not binary-solvable.
  const SolveResult u24 = solve_exhaustive(uniform(2, 4), 2);
  CHECK(u24.complete);
  CHECK(u24.best < exact(2));
}

TEST_CASE("search on C4 over coordinate partitions") {
  SolveOptions options;
  options.candidates = std::vector<Partition>{coordinate_partition(2, 2, 0),
                                              coordinate_partition(2, 2, 1)};
  const SolveResult res = solve_exhaustive(fixtures::c4(), 2, options);
  CHECK(res.complete);
  CHECK(res.best == exact(2));
  REQUIRE(res.best_f);
  CHECK(coding_validate(*res.best_f).valid);
  CHECK(res.best_f->parts == c4_solution(2).parts);

  const SolveResult full = solve_exhaustive(fixtures::c4(), 2);
  CHECK(full.best == exact(2));
}

TEST_CASE("search results do not depend on the thread count") {
  for (const ClosureOperator& op : {uniform(2, 3), uniform(2, 4), fixtures::c4()}) {
    SolveOptions one;
    one.collect_solutions = true;
    SolveOptions four = one;
    four.threads = 4;
    const SolveResult a = solve_exhaustive(op, 2, one);
    const SolveResult b = solve_exhaustive(op, 2, four);
    CHECK(a.best == b.best);
    CHECK(a.nodes == b.nodes);
    REQUIRE(a.best_f);
    REQUIRE(b.best_f);
    CHECK(a.best_f->parts == b.best_f->parts);
    REQUIRE(a.solutions.size() == b.solutions.size());
    for (std::size_t i = 0; i < a.solutions.size(); ++i) {
      CHECK(a.solutions[i].parts == b.solutions[i].parts);
    }
  }
}



TEST_CASE("budget and size guards") {
  SolveOptions options;
  options.budget = 10;
  const SolveResult res = solve_exhaustive(fixtures::c5(), 2, options);
  CHECK_FALSE(res.complete);
  CHECK(res.budget_exhausted);
  CHECK_THROWS_AS(solve_exhaustive(uniform(3, 4), 3), BudgetExceeded);
  CHECK_THROWS_AS(solve_exhaustive(uniform(3, 4), 1), std::invalid_argument);
}

TEST_CASE("solutions satisfy the rank bound chain") {
  SolveOptions options;
  options.collect_solutions = true;
  std::vector<CodingFunction> solutions;
  for (const ClosureOperator& op : {uniform(1, 2), uniform(1, 3), uniform(2, 3)}) {
    for (CodingFunction& f : solve_exhaustive(op, 2, options).solutions) solutions.push_back(f);
  }
  solutions.push_back(c4_solution(2));
  solutions.push_back(c4_solution(3));
  for (const CodingFunction& f : solutions) {
    REQUIRE(is_solution(f));
    const RankProfile profile(f.op);
    const std::vector<Entropy> table = entropy_table(f);
    const Mask ground = f.op.ground();
    for (Mask x = 0; x <= ground; ++x) {
      const CodingRankBounds b = coding_rank_bounds(f, table, profile, x);
      CHECK(b.chain_holds);
      CHECK(exact(profile.urk(x)) <= b.urk_f);
      CHECK(exact(profile.urk(x)) <= b.h);
      CHECK(b.h <= exact(profile.irk(x)));
    }
    CHECK(coding_rank_bounds(f, table, profile, ground).urk_f == table[ground]);
    const ClosureOperator cl_f = induced_closure(f);
    CHECK(operator_le(f.op, cl_f));
  }
}

// Monotone, submodular, normalized, H_f(v) <= 1 and closure-invariant.
void check_entropy_properties(const CodingFunction& f) {
  const std::vector<Entropy> h = entropy_table(f);
  const Mask ground = f.op.ground();
  CHECK(h[0] == exact(0));
  for (int v = 1; v <= f.op.size(); ++v) CHECK(h[vertex_bit(v)] <= exact(1));
  for (Mask x = 0; x <= ground; ++x) {
    CHECK(h[x] == h[f.op(x)]);
    for (Mask rest = ground & ~x; rest != 0; rest &= rest - 1) {
      const Mask v = rest & (~rest + 1);
      CHECK(h[x] <= h[x | v]);
    }
    for (Mask y = x; y <= ground; ++y) {
      if (h[x | y] + h[x & y] > h[x] + h[y]) {
        FAIL("submodularity fails at " << format_subset(x) << ", " << format_subset(y));
      }
    }
  }
  const Partition fx = f.of(mask_of({1}));
  const Partition fy = f.of(ground & ~mask_of({1}));
  CHECK(join_partitions(fx, fy) == f.of(ground));
}

TEST_CASE("C5 is not binary-solvable") {
  SolveOptions options;
  options.budget = 100'000'000;
  const SolveResult res = solve_exhaustive(fixtures::c5(), 2, options);
  CHECK(res.complete);
  CHECK(res.best == exact(9, 4));
  REQUIRE(res.best_f);
  CHECK(coding_validate(*res.best_f).valid);
  check_entropy_properties(*res.best_f);
}

TEST_CASE("coding entropy properties") {
  SolveOptions options;
  options.collect_solutions = true;
  for (CodingFunction& f : solve_exhaustive(uniform(2, 3), 2, options).solutions) {
    check_entropy_properties(f);
  }
  check_entropy_properties(c4_solution(3));
  const auto [op, spec] = density_tree(2, BigRational(3, 2));
  check_entropy_properties(density_coding(spec, op).f);
}

TEST_CASE("solvability transfers to smaller operators of equal rank") {
  struct Case {
    ClosureOperator big;
    CodingFunction f;
  };
  SolveOptions options;
  const SolveResult u23 = solve_exhaustive(uniform(2, 3), 2, options);
  REQUIRE(u23.best_f);
  std::vector<Case> cases{{uniform(2, 3), *u23.best_f}, {fixtures::c4(), c4_solution(2)}};
  int transferred = 0;
  for (const Case& c : cases) {
    const int n = c.big.size();
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      const ClosureOperator small = random_moore(n, seed);
      if (rank_of(small) != rank_of(c.big) || !operator_le(small, c.big)) continue;
      CodingFunction g = c.f;
      g.op = small;
      CHECK(coding_validate(g).valid);
      CHECK(is_solution(g));
      ++transferred;
    }
  }
  CHECK(transferred > 10);
}

TEST_CASE("density coding at H = 3/2") {
  const auto [op, spec] = density_tree(2, BigRational(3, 2));
  const DensityCoding coding = density_coding(spec, op);
  CHECK(coding.f.q == 4);
  CHECK(coding.f.carrier() == 16);
  CHECK(coding.S[0] == mask_of({1}));
  CHECK(coding.S[3] == mask_of({2, 3}));
  CHECK(coding.S[1] == mask_of({1, 2}));
  CHECK(coding.S[2] == mask_of({1, 3}));
  CHECK(validate_density_coding(coding, spec).valid);
  CHECK(coding_validate(coding.f).valid);
  CHECK(entropy_of(coding.f, op.ground()) == exact(3, 2));
  CHECK(density_entropy(coding, spec, op.ground()) == BigRational(3, 2));
}

TEST_CASE("density coding: structure and entropy agree with the g_S formula") {
  for (const BigRational& h : {BigRational(3, 2), BigRational(7, 4), BigRational(2)}) {
    const auto [op, spec] = density_tree(2, h);
    const DensityCoding coding = density_coding(spec, op);
    CHECK(validate_density_coding(coding, spec).valid);
    CHECK(coding_validate(coding.f).valid);
    const std::vector<Entropy> table = entropy_table(coding.f);
    for (Mask x = 0; x <= op.ground(); ++x) {
      CHECK(table[x] == Entropy::of(density_entropy(coding, spec, x)));
      const Mask a = spec.ancestry_of(x);
      Mask sx = 0, sa = 0;
      for (int v : vertices_of(x)) sx |= coding.S[v - 1];
      for (int v : vertices_of(a)) sa |= coding.S[v - 1];
      CHECK(sx == sa);
    }
    CHECK(table[op.ground()] == Entropy::of(h));
    for (int v = 1; v <= spec.size(); ++v) {
      CHECK(cardinality(coding.S[v - 1]) == spec.N[spec.tree[v - 1] - 1] + spec.level[v - 1]);
      CHECK(cardinality(coding.S[v - 1]) <= spec.D);
    }
  }
}

TEST_CASE("density coding at H = 5/4 validates structurally") {
  const auto [op, spec] = density_tree(2, BigRational(5, 4));
  REQUIRE(spec.size() == 42);
  const DensityCoding coding = density_coding(spec, op);
  CHECK(validate_density_coding(coding, spec).valid);
  CHECK(partition_entropy(coding.f.of(op.ground()), coding.f.q, coding.f.r) == exact(5, 4));
  CHECK(density_entropy(coding, spec, op.ground()) == BigRational(5, 4));
}

TEST_CASE("tampered density coding is rejected") {
  const auto [op, spec] = density_tree(2, BigRational(7, 4));
  DensityCoding coding = density_coding(spec, op);
  std::swap(coding.f.parts[1], coding.f.parts[2]);
  CHECK_FALSE(validate_density_coding(coding, spec).valid);
  DensityCoding dropped = density_coding(spec, op);
  dropped.S[spec.roots[1] - 1] &= dropped.S[spec.roots[1] - 1] - 1;
  CHECK_FALSE(validate_density_coding(dropped, spec).valid);
}

}  // namespace
}  // namespace closlab

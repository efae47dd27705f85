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

// Acceptance run: one [PASS]/[FAIL] line per criterion, exit 1 on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "closlab/coding.hpp"
#include "closlab/constructors.hpp"
#include "closlab/ranks.hpp"
#include "closlab/reduction.hpp"
#include "closlab/shannon.hpp"

namespace closlab {
namespace {

using Q = BigRational;

// Collects the first few failures of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ << (failures_ > 1 ? "; " : "") << what;
  }
  bool ok() const { return failures_ == 0; }
  std::string notes() const {
    std::string s = notes_.str();
    if (failures_ > 3) s += "; " + std::to_string(failures_ - 3) + " more";
    return s;
  }
  std::string info;  // summary printed on success too

 private:
  int failures_ = 0;
  std::ostringstream notes_;
};

std::string sub(Mask x) { return format_subset(x); }

void c1_dclosure(Check& c) {
  for (int n = 3; n <= 5; ++n) {
    const std::string at = " (n=" + std::to_string(n) + ")";
    c.expect(same_table(from_digraph(Digraph(n)), uniform(0, n)), "acyclic != U_{0,n}" + at);
    c.expect(same_table(from_digraph(directed_cycle(n)), uniform(1, n)), "C_n != U_{1,n}" + at);
    c.expect(same_table(from_digraph(complete_digraph(n)), uniform(n - 1, n)),
             "K_n != U_{n-1,n}" + at);
    c.expect(same_table(from_digraph(all_loops(n)), uniform(n, n)), "loops != U_{n,n}" + at);
  }
}

void c2_nonmonotone_irk(Check& c) {
  const ClosureOperator op =
      from_digraph(Digraph(5, {{1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 4}, {4, 1}, {4, 2}}));
  c.expect(op(mask_of({4})) == op.ground(), "cl(4) = " + sub(op(mask_of({4}))));
  c.expect(op(mask_of({1, 2})) == mask_of({1, 2, 3}), "cl(12) = " + sub(op(mask_of({1, 2}))));
  const int irk_v = inner_rank(op, op.ground()).value;
  const int irk_123 = inner_rank(op, mask_of({1, 2, 3})).value;
  c.expect(irk_v == 1, "irk(V) = " + std::to_string(irk_v));
  c.expect(irk_123 == 2, "irk(123) = " + std::to_string(irk_123));
  c.info = "irk(V)=" + std::to_string(irk_v) + ", irk(123)=" + std::to_string(irk_123);
}

void c3_rank_properties(Check& c) {
  constexpr int kOperators = 500;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < kOperators; ++trial) {
    const int n = 1 + trial % 6;
    const RankProfile p(random_moore(n, rng()));
    const ClosureOperator& op = p.op();
    const Mask v = p.ground();
    const int r = p.rank();
    const std::string at = " at op " + std::to_string(trial);
    c.expect(p.ork(0) == 0 && p.irk(0) == 0 && p.lrk(0) == 0 && p.urk(0) == 0,
             "ranks of the empty set" + at);
    c.expect(p.ork(v) == r && p.irk(v) == r && p.lrk(v) == r && p.urk(v) == r,
             "ranks of V" + at);
    for (Mask x = 0; x <= v; ++x) {
      const Mask cx = op(x);
      const std::string ax = " X=" + sub(x) + at;
      c.expect(p.ork(x) <= p.irk(x) && p.irk(x) <= cardinality(x), "ork <= irk <= |X|" + ax);
      c.expect(p.ork(cx) == p.ork(x) && p.irk(cx) == p.irk(x), "closure invariance" + ax);
      c.expect(p.lrk(x) <= p.urk(x) && p.urk(x) <= p.ork(x), "lrk <= urk <= ork" + ax);
      c.expect(p.urk(cx) == p.urk(x), "urk closure invariance" + ax);
      c.expect((p.lrk(x) == 0) == (op(v & ~x) == v), "lrk = 0 iff V\\X spans" + ax);
      c.expect((p.urk(x) == r) == (cx == v), "urk = r iff X spans" + ax);
      c.expect(p.urk(x) == upper_rank_alternate(op, x), "urk alternate form (min)" + ax);
      c.expect(p.urk(x) == p.upper_rank_via_flats(x), "urk alternate form (flats)" + ax);
      for (int u = 1; u <= n; ++u) {
        const Mask y = x | vertex_bit(u);
        c.expect(p.ork(x) <= p.ork(y) && p.ork(y) <= p.ork(x) + 1, "ork unit increase" + ax);
        c.expect(p.lrk(x) <= p.lrk(y) && p.urk(x) <= p.urk(y), "lrk, urk monotone" + ax);
      }
      for (Mask y = 0; y <= v; ++y) {
        if (p.ork(x | y) > p.ork(x) + p.ork(y)) c.expect(false, "ork subadditive" + ax);
      }
    }
  }
  c.info = std::to_string(kOperators) + " operators";
}

void c4_matroids(Check& c) {
  std::vector<ClosureOperator> ops;
  std::vector<ClosureOperator> uniforms;
  for (int n = 1; n <= 5; ++n) {
    for (int r = 0; r <= n; ++r) uniforms.push_back(uniform(r, n));
  }
  ops = uniforms;
  for (const ClosureOperator& a : uniforms) {
    for (const ClosureOperator& b : uniforms) {
      if (a.size() + b.size() > 5) continue;
      for (UnionKind k : {UnionKind::kDisjoint, UnionKind::kUnidirectional, UnionKind::kBidirectional}) {
        ops.push_back(union_combine(a, b, k));
      }
    }
  }
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) ops.push_back(random_moore(1 + i % 5, rng()));
  int matroids = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const MatroidReport m = matroid_check(RankProfile(ops[i]));
    c.expect(m.consistent(), "characterizations disagree on " + ops[i].label());
    matroids += m.exchange;
  }
  const RankProfile c4(from_digraph(undirected_cycle(4)));
  c.expect(!matroid_check(c4).exchange, "C4 reported as a matroid");
  const SpanOperatorResult span = span_operator(c4);
  c.expect(span.report.valid && same_table(span.candidate, uniform(2, 4)),
           "C4 span operator is not U_{2,4}");
  c.info = std::to_string(ops.size()) + " operators, " + std::to_string(matroids) + " matroids";
}

void c5_cycle5(Check& c) {
  const ClosureOperator op = from_digraph(undirected_cycle(5));
  const RankProfile p(op);
  int outer = 0;
  for (Mask x = 0; x <= p.ground(); ++x) outer += complemented_status(p, x).outer;
  c.expect(outer == 32, std::to_string(outer) + " of 32 subsets outer complemented");
  const auto violation = ork_submodularity_violation(p);
  c.expect(violation.has_value(), "no ork submodularity violation");
  const Mask x = mask_of({1, 2, 3}), y = mask_of({2, 3, 4});
  c.expect(p.ork(x | y) + p.ork(x & y) > p.ork(x) + p.ork(y), "pair 123, 234 is not a violation");
  const auto obstruction = unsolvability_obstruction(p);
  c.expect(obstruction.has_value(), "no obstruction witness");
  const BigRational se = shannon_entropy(op).value;
  c.expect(se == Q(5, 2), "SE = " + se.str());
  c.info = "SE=" + se.str() + (obstruction ? ", obstruction " + sub(*obstruction) : "") +
           (violation ? ", first violation " + sub(violation->first) + "," + sub(violation->second)
                      : "");
}

void c6_cycle4(Check& c) {
  for (int q : {2, 3}) {
    const CodingFunction f = c4_solution(q);
    c.expect(coding_validate(f).valid, "c4_solution(" + std::to_string(q) + ") invalid");
    const Entropy h = entropy_of(f, f.op.ground());
    c.expect(h == Entropy::of(Q(2)), "H_f(V) = " + h.str() + " for q=" + std::to_string(q));
    const ValidationReport literal = coding_validate(c4_literal_assignment(q));
    c.expect(!literal.valid, "literal pairing validates for q=" + std::to_string(q));
    if (!literal.valid) {
      c.expect(literal.violations.front().subset == mask_of({1, 3}),
               "literal pairing witness " + sub(literal.violations.front().subset));
    }
  }
  c.expect(!unsolvability_obstruction(RankProfile(from_digraph(undirected_cycle(4)))),
           "C4 has an obstruction");
}

// A Moore family between the disjoint and the unidirectional union.
ClosureOperator sandwich(const ClosureOperator& a, const ClosureOperator& b, std::mt19937_64& rng) {
  const ClosureOperator uni = union_combine(a, b, UnionKind::kUnidirectional);
  const ClosureOperator dis = union_combine(a, b, UnionKind::kDisjoint);
  std::vector<Mask> family = closed_sets(dis);
  for (Mask x : closed_sets(uni)) {
    if (dis(x) != x && rng() % 2 == 0) family.push_back(x);
  }
  return moore_closure(uni.size(), family);
}

void c7_density(Check& c, const BigRational& h) {
  const auto [op, spec] = density_tree(2, h);
  const ValidationReport structure = validate_tree_structure(spec, op);
  c.expect(structure.valid, "tree structure invalid");
  c.expect(spec.r == 2, "rank " + std::to_string(spec.r));
  if (op.size() <= kMaxTableSize) {
    c.expect(validate_closure(op).valid, "operator fails the closure axioms");
    c.expect(rank_of(op) == 2, "rank_of = " + std::to_string(rank_of(op)));
  }
  const DensityCoding coding = density_coding(spec, op);
  c.expect(validate_density_coding(coding, spec).valid, "density coding invalid");
  const BigRational hv = density_entropy(coding, spec, op.ground());
  c.expect(hv == h, "H_f(V) = " + hv.str());
  // The pinch: H_f(V) <= entropy <= SE <= relaxation bound.
  const DensityPinch pinch = density_pinch(spec, op);
  c.expect(pinch.pinched, "not pinched: [" + pinch.lower.str() + ", " + pinch.upper.str() + "]");
  std::string se_text = "SE=" + pinch.upper.str() + " by pinch";
  if (op.size() <= kMaxTableSize) {
    const BigRational se = shannon_entropy(op).value;
    c.expect(se == h, "SE = " + se.str());
    se_text = "SE=" + se.str() + " by LP";
  }
  c.info = "n=" + std::to_string(op.size()) + ", " + se_text;
}

void c8_union_laws(Check& c) {
  std::mt19937_64 rng(8);
  ShannonOptions value_only;
  value_only.lexicographic_witness = false;
  auto se = [&](const ClosureOperator& op) { return shannon_entropy(op, value_only).value; };
  for (int i = 0; i < 100; ++i) {
    const int n1 = 1 + static_cast<int>(rng() % 4);
    const int n2 = 1 + static_cast<int>(rng() % 4);
    const ClosureOperator a = random_moore(n1, rng());
    const ClosureOperator b = random_moore(n2, rng());
    const BigRational sa = se(a), sb = se(b);
    const std::string at = " at pair " + std::to_string(i);
    c.expect(se(union_combine(a, b, UnionKind::kDisjoint)) == sa + sb, "disjoint" + at);
    c.expect(se(union_combine(a, b, UnionKind::kUnidirectional)) == sa + sb, "unidirectional" + at);
    const ClosureOperator mid = sandwich(a, b, rng);
    c.expect(between_unions(mid, a, b), "sandwich construction" + at);
    c.expect(se(mid) == sa + sb, "sandwich" + at);
    const BigRational bi = se(union_combine(a, b, UnionKind::kBidirectional));
    c.expect(bi <= sa + Q(n2) && bi <= sb + Q(n1), "bidirectional bound" + at);
  }
  for (int i = 0; i < 100; ++i) {
    const ClosureOperator op = random_moore(1 + i % 6, rng());
    ShannonOptions full = value_only;
    full.mode = ShannonMode::kFull;
    c.expect(se(op) == shannon_entropy(op, full).value,
             "reduced != full at operator " + std::to_string(i));
  }
}

void c9_reduction(Check& c) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const SetOperator a = random_set_operator(1 + i % 3, rng());
    const Reduction red = reduce_to_closure(a);
    c.expect(validate_closure(red.closure).valid, "not a closure operator: " + a.label());
    c.expect(operators_equivalent(a, SetOperator::of(red.closure), 2, 3),
             "not equivalent: " + a.label());
  }
  // a ≡ ∅ on one vertex: X ∪ (union of images) would be the identity, which
  // admits non-universal f_1; the union of members keeps f_1 universal.
  const SetOperator empty(1, {0, 0}, "empty");
  const Reduction red = reduce_to_closure(empty);
  c.expect(red.trace.union_of_images_not_extensive == Mask{1},
           "union of images is extensive at {1}");
  c.expect(red.closure(0) == 1, "reduced cl(empty) = " + sub(red.closure(0)));
  c.expect(operators_equivalent(empty, SetOperator::of(red.closure), 2, 3),
           "n=1 reduction not equivalent");
  c.expect(!operators_equivalent(empty, SetOperator(1, {0, 1}), 2, 3),
           "identity equivalent to the empty operator");
}

void c10_bound_chain(Check& c) {
  SolveOptions options;
  options.collect_solutions = true;
  std::vector<CodingFunction> fs;
  for (const ClosureOperator& op : {uniform(1, 2), uniform(1, 3), uniform(2, 3)}) {
    for (CodingFunction& f : solve_exhaustive(op, 2, options).solutions) fs.push_back(f);
  }
  fs.push_back(c4_solution(2));
  for (const CodingFunction& f : fs) {
    c.expect(is_solution(f), "not a solution on " + f.op.label());
    const RankProfile profile(f.op);
    const std::vector<Entropy> table = entropy_table(f);
    for (Mask x = 0; x <= f.op.ground(); ++x) {
      c.expect(coding_rank_bounds(f, table, profile, x).chain_holds,
               "chain fails on " + f.op.label() + " at " + sub(x));
    }
  }
  c.info = std::to_string(fs.size()) + " solutions";
}

struct Criterion {
  std::string name;
  double limit_s;  // 0: no time limit
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace closlab

int main() {
  using namespace closlab;
  const std::vector<Criterion> criteria = {
      {"1 D-closure classifications", 1, c1_dclosure},
      {"2 non-monotone inner rank fixture", 0, c2_nonmonotone_irk},
      {"3 rank-function properties", 60, c3_rank_properties},
      {"4 matroid characterizations", 0, c4_matroids},
      {"5 C5 chain", 5, c5_cycle5},
      {"6 C4 chain", 0, c6_cycle4},
      {"7 density theorem, H = 3/2", 30, [](Check& c) { c7_density(c, Q(3, 2)); }},
      {"7 density theorem, H = 5/4", 30, [](Check& c) { c7_density(c, Q(5, 4)); }},
      {"7 density theorem, H = 7/4", 30, [](Check& c) { c7_density(c, Q(7, 4)); }},
      {"7 density theorem, H = 2", 30, [](Check& c) { c7_density(c, Q(2)); }},
      {"8 Shannon union laws", 120, c8_union_laws},
      {"9 reduction", 60, c9_reduction},
      {"10 solution bound chain", 0, c10_bound_chain},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) {
      check.expect(false, "took " + std::to_string(secs) + " s, limit " +
                              std::to_string(cr.limit_s) + " s");
    }
    const bool ok = check.ok();
    failed += !ok;
    std::printf("[%s] %s (%.2f s)", ok ? "PASS" : "FAIL", cr.name.c_str(), secs);
    if (!check.info.empty()) std::printf(" %s", check.info.c_str());
    if (!ok) std::printf(": %s", check.notes().c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

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


#include "closlab/shannon.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "closlab/coding.hpp"
#include "closlab/errors.hpp"
#include "closlab/lp.hpp"
#include "closlab/ranks.hpp"

namespace closlab {
namespace {

constexpr std::size_t kSeparationBatch = 64;

int index_of(const std::vector<Mask>& sorted, Mask c) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), c);
  if (it == sorted.end() || *it != c) return -1;
  return static_cast<int>(it - sorted.begin());
}

using Cut = std::pair<ExactLP::Row, BigRational>;
using Separator = std::function<std::vector<Cut>(const std::vector<BigRational>&)>;

// Solves max c.x, adding separated rows until none is violated. Cuts that go
// slack are dropped once; a cut is never dropped twice, so this terminates.
BigRational solve_separated(ExactLP& lp, const std::vector<BigRational>& c,
                            const Separator& separate, int& rounds) {
  lp.set_objective(c);
  std::vector<int> live;
  while (true) {
    const LPStatus status = lp.solve();
    if (status != LPStatus::kOptimal) {
      throw std::logic_error("Shannon LP is infeasible or unbounded; its rows are inconsistent");
    }
    if (!separate) return lp.objective_value();
    const auto cuts = separate(lp.solution());
    if (cuts.empty()) return lp.objective_value();
    ++rounds;
    std::vector<int> kept;
    for (int id : live) {
      if (!lp.drop_row_if_slack(id)) kept.push_back(id);
    }
    live = std::move(kept);
    for (const auto& [row, rhs] : cuts) lp.add_row(row, rhs);
    // Only cuts from this round may be dropped later.
    const int first = lp.num_rows_added() - static_cast<int>(cuts.size());
    for (int id = first; id < lp.num_rows_added(); ++id) live.push_back(id);
  }
}

// Maximizes x[target], then makes the optimum lexicographically least in
// variable order by minimizing each coordinate over the current optimal face.
std::vector<BigRational> optimize(ExactLP& lp, int target, bool lexicographic,
                                  const Separator& separate, BigRational& value, int& rounds) {
  const int n = lp.num_vars();
  std::vector<BigRational> c(static_cast<std::size_t>(n));
  c[target] = 1;
  value = solve_separated(lp, c, separate, rounds);
  if (!lexicographic) return lp.solution();
  lp.restrict_to_optimal_face();
  for (int k = 0; k < n; ++k) {
    if (lp.fix_if_nonbasic(k)) continue;
    std::vector<BigRational> ck(static_cast<std::size_t>(n));
    ck[k] = -1;
    solve_separated(lp, ck, separate, rounds);
    lp.restrict_to_optimal_face();
  }
  std::vector<BigRational> x = lp.solution();
  if (x[target] != value) throw std::logic_error("lexicographic refinement changed the optimum");
  return x;
}

ShannonResult reduced_mode(const ClosureOperator& op, const ShannonOptions& options) {
  ShannonResult out;
  out.mode = ShannonMode::kReduced;
  out.closed = closed_sets(op);
  const std::vector<Mask>& closed = out.closed;
  if (closed.size() > options.max_closed_sets) {
    throw SizeLimitError("reduced Shannon LP: " + std::to_string(closed.size()) +
                         " closed sets exceed the cap of " +
                         std::to_string(options.max_closed_sets));
  }
  const int k = static_cast<int>(closed.size());
  const RankProfile profile(op);
  ExactLP lp(k);
  lp.set_pivot_limit(options.pivot_limit);
  for (int i = 0; i < k; ++i) lp.add_row({{i, BigRational(1)}}, BigRational(profile.irk(closed[i])));
  // Monotone rows on covering pairs: the covers of C are the minimal cl(C ∪ v).
  const Mask ground = op.ground();
  for (int i = 0; i < k; ++i) {
    std::vector<Mask> ups;
    for (Mask rest = ground & ~closed[i]; rest != 0; rest &= rest - 1) {
      ups.push_back(op(closed[i] | (rest & (~rest + 1))));
    }
    std::sort(ups.begin(), ups.end());
    ups.erase(std::unique(ups.begin(), ups.end()), ups.end());
    for (Mask up : ups) {
      const bool minimal = std::none_of(ups.begin(), ups.end(), [&](Mask other) {
        return other != up && is_subset(other, up);
      });
      if (minimal) lp.add_row({{i, BigRational(1)}, {index_of(closed, up), BigRational(-1)}}, 0);
    }
  }
  const Separator separate = [&](const std::vector<BigRational>& x) {
    struct Scored {
      BigRational violation;
      int i, j, join, meet;
    };
    std::vector<Scored> found;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const Mask c = closed[i], d = closed[j];
        if (is_subset(c, d) || is_subset(d, c)) continue;
        const int join = index_of(closed, op(c | d));
        const int meet = index_of(closed, c & d);
        BigRational v = x[join] + x[meet] - x[i] - x[j];
        if (v.sign() > 0) found.push_back({std::move(v), i, j, join, meet});
      }
    }
    // Most violated first; scan order breaks ties.
    std::stable_sort(found.begin(), found.end(),
                     [](const Scored& a, const Scored& b) { return a.violation > b.violation; });
    if (found.size() > kSeparationBatch) found.resize(kSeparationBatch);
    std::vector<Cut> cuts;
    for (const Scored& s : found) {
      cuts.push_back({{{s.join, BigRational(1)},
                       {s.meet, BigRational(1)},
                       {s.i, BigRational(-1)},
                       {s.j, BigRational(-1)}},
                      BigRational(0)});
    }
    return cuts;
  };
  out.witness = optimize(lp, index_of(closed, ground), options.lexicographic_witness, separate,
                         out.value, out.separation_rounds);
  out.variables = k;
  out.rows = lp.num_rows();
  out.pivots = lp.pivots();
  return out;
}

ShannonResult full_mode(const ClosureOperator& op, const ShannonOptions& options) {
  const int n = op.size();
  if (n > options.full_mode_cap) {
    throw SizeLimitError("full Shannon LP supports n <= " + std::to_string(options.full_mode_cap));
  }
  const Mask ground = op.ground();
  const int vars = static_cast<int>(subset_count(n));
  ExactLP lp(vars);
  lp.set_pivot_limit(options.pivot_limit);
  const BigRational one(1), minus(-1);
  for (Mask x = 0; x <= ground; ++x) {
    const int xi = static_cast<int>(x);
    lp.add_row({{xi, one}}, BigRational(cardinality(x)));
    const Mask cx = op(x);
    if (cx != x) {
      lp.add_row({{xi, one}, {static_cast<int>(cx), minus}}, 0);
      lp.add_row({{xi, minus}, {static_cast<int>(cx), one}}, 0);
    }
    for (int i = 0; i < n; ++i) {
      const Mask bi = Mask{1} << i;
      if (x & bi) continue;
      lp.add_row({{xi, one}, {static_cast<int>(x | bi), minus}}, 0);
      for (int j = i + 1; j < n; ++j) {
        const Mask bj = Mask{1} << j;
        if (x & bj) continue;
        lp.add_row({{static_cast<int>(x | bi | bj), one},
                    {xi, one},
                    {static_cast<int>(x | bi), minus},
                    {static_cast<int>(x | bj), minus}},
                   0);
      }
    }
  }
  ShannonResult out;
  out.mode = ShannonMode::kFull;
  const std::vector<BigRational> x = optimize(lp, static_cast<int>(ground),
                                              options.lexicographic_witness, nullptr, out.value,
                                              out.separation_rounds);
  out.closed = closed_sets(op);
  for (Mask c : out.closed) out.witness.push_back(x[c]);
  out.variables = vars;
  out.rows = lp.num_rows();
  out.pivots = lp.pivots();
  return out;
}

template <class T, class Lift>
ValidationReport verify_impl(const ClosureOperator& op, const std::vector<T>& r,
                             bool all_witnesses, Lift lift) {
  const int n = op.size();
  if (n > 10) throw SizeLimitError("verify_shannon_function supports n <= 10");
  if (r.size() != subset_count(n)) throw std::invalid_argument("values must cover all 2^n subsets");
  ValidationReport report;
  const Mask ground = op.ground();
  bool seen_b = false, seen_m = false, seen_s = false, seen_c = false;
  auto want = [&](bool& seen) {
    const bool w = all_witnesses || !seen;
    seen = true;
    return w;
  };
  const T zero = lift(0);
  for (Mask x = 0; x <= ground; ++x) {
    if ((r[x] < zero || lift(cardinality(x)) < r[x]) && want(seen_b)) {
      report.add({"bounds", x, 0, "r(" + format_subset(x) + ") outside [0, |X|]"});
    }
    if (!(r[x] == r[op(x)]) && want(seen_c)) {
      report.add({"closure", x, op(x), "r(" + format_subset(x) + ") != r(cl(X))"});
    }
    for (Mask rest = ground & ~x; rest != 0; rest &= rest - 1) {
      const Mask v = rest & (~rest + 1);
      if (r[x | v] < r[x] && want(seen_m)) {
        report.add({"monotone", x, x | v, "r decreases from " + format_subset(x) + " to " +
                                              format_subset(x | v)});
      }
    }
    for (Mask y = x + 1; y <= ground; ++y) {
      if (r[x] + r[y] < r[x | y] + r[x & y] && want(seen_s)) {
        report.add({"submodular", x, y, "r(X)+r(Y) < r(X∪Y)+r(X∩Y) at X = " + format_subset(x) +
                                            ", Y = " + format_subset(y)});
      }
    }
  }
  return report;
}

}  // namespace

const char* shannon_mode_name(ShannonMode mode) {
  return mode == ShannonMode::kReduced ? "reduced" : "full";
}

const BigRational& ShannonResult::at(Mask c) const {
  const int i = index_of(closed, c);
  if (i < 0) throw std::out_of_range(format_subset(c) + " is not closed");
  return witness[i];
}

ShannonResult shannon_entropy(const ClosureOperator& op, const ShannonOptions& options) {
  require_size(op, kMaxTableSize, "shannon_entropy");
  return options.mode == ShannonMode::kReduced ? reduced_mode(op, options)
                                               : full_mode(op, options);
}

ShannonTable extend_from_closed(const ClosureOperator& op, const std::vector<Mask>& closed,
                                const std::vector<BigRational>& values) {
  require_size(op, kMaxTableSize, "extend_from_closed");
  if (closed.size() != values.size()) throw std::invalid_argument("one value per closed set");
  std::unordered_map<Mask, const BigRational*> at;
  for (std::size_t i = 0; i < closed.size(); ++i) at[closed[i]] = &values[i];
  ShannonTable out(subset_count(op.size()));
  for (Mask x = 0; x < out.size(); ++x) {
    const auto it = at.find(op(x));
    if (it == at.end()) throw std::invalid_argument("no value for " + format_subset(op(x)));
    out[x] = *it->second;
  }
  return out;
}

ShannonTable extend_from_closed(const ClosureOperator& op, const ShannonResult& result) {
  return extend_from_closed(op, result.closed, result.witness);
}

ValidationReport verify_shannon_function(const ClosureOperator& op, const ShannonTable& values,
                                         bool all_witnesses) {
  return verify_impl(op, values, all_witnesses, [](int k) { return BigRational(k); });
}

ValidationReport verify_shannon_function(const ClosureOperator& op,
                                         const std::vector<Entropy>& values, bool all_witnesses) {
  return verify_impl(op, values, all_witnesses,
                     [](int k) { return Entropy::of(BigRational(k)); });
}

ShannonTable indicator_function(const ClosureOperator& op) {
  require_size(op, kMaxTableSize, "indicator_function");
  const Mask bottom = op(0);
  ShannonTable out(subset_count(op.size()));
  for (Mask x = 0; x < out.size(); ++x) out[x] = op(x) == bottom ? 0 : 1;
  return out;
}

bool between_unions(const ClosureOperator& op, const ClosureOperator& op1,
                    const ClosureOperator& op2) {
  if (op.size() != op1.size() + op2.size()) return false;
  return operator_le(union_combine(op1, op2, UnionKind::kUnidirectional), op) &&
         operator_le(op, union_combine(op1, op2, UnionKind::kDisjoint));
}

ShannonTable split_shannon(const ClosureOperator& op, const ShannonTable& values, Mask v1) {
  const Mask ground = op.ground();
  if (values.size() != subset_count(op.size())) {
    throw std::invalid_argument("values must cover all 2^n subsets");
  }
  if (!is_subset(v1, ground)) throw std::invalid_argument("V_1 is not a subset of V");
  ShannonTable out(values.size());
  for (Mask x = 0; x <= ground; ++x) out[x] = values[x & v1] + values[x | v1] - values[v1];
  const ValidationReport report = verify_shannon_function(op, out);
  if (!report.valid) {
    throw ValidationError("split function is not a Shannon function: " +
                          report.violations.front().detail);
  }
  for (Mask x = 0; x <= ground; ++x) {
    if (out[x] != out[x & v1] + out[x & ~v1]) {
      throw ValidationError("split function is not additive at " + format_subset(x));
    }
  }
  if (out[ground] != values[ground]) throw ValidationError("split function changed r(V)");
  return out;
}

RelaxationResult shannon_upper_bound(const ClosureOperator& op, const RelaxationFamily& family) {
  if (family.sets.size() != family.generators.size()) {
    throw std::invalid_argument("one generator per family member");
  }
  std::vector<std::size_t> order(family.sets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return family.sets[a] < family.sets[b]; });
  RelaxationResult out;
  std::vector<int> bound;
  for (std::size_t i : order) {
    const Mask c = family.sets[i];
    if (!out.sets.empty() && out.sets.back() == c) {
      bound.back() = std::min(bound.back(), cardinality(family.generators[i]));
      continue;
    }
    if (op(c) != c) throw std::invalid_argument(format_subset(c) + " is not closed");
    out.sets.push_back(c);
    bound.push_back(cardinality(family.generators[i]));
  }
  for (std::size_t i : order) {
    if (op(family.generators[i]) != family.sets[i]) {
      throw std::invalid_argument("generator " + format_subset(family.generators[i]) +
                                  " does not generate " + format_subset(family.sets[i]));
    }
  }
  const Mask ground = op.ground();
  const int top = index_of(out.sets, ground);
  if (top < 0 || index_of(out.sets, op(0)) < 0) {
    throw std::invalid_argument("relaxation family must contain V and cl(∅)");
  }
  const int k = static_cast<int>(out.sets.size());
  ExactLP lp(k);
  const BigRational one(1), minus(-1);
  for (int i = 0; i < k; ++i) lp.add_row({{i, one}}, BigRational(bound[i]));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Mask c = out.sets[i], d = out.sets[j];
      if (i != j && is_subset(c, d)) lp.add_row({{i, one}, {j, minus}}, 0);
      if (i < j && !is_subset(c, d) && !is_subset(d, c)) {
        const int join = index_of(out.sets, op(c | d));
        const int meet = index_of(out.sets, c & d);
        if (join >= 0 && meet >= 0) {
          lp.add_row({{join, one}, {meet, one}, {i, minus}, {j, minus}}, 0);
        }
      }
    }
  }
  int rounds = 0;
  out.witness = optimize(lp, top, true, nullptr, out.value, rounds);
  out.rows = lp.num_rows();
  return out;
}

RelaxationFamily density_relaxation_family(const TreeSpec& spec, const ClosureOperator& op) {
  const Mask ground = op.ground();
  Mask roots = 0;
  for (int root : spec.roots) roots |= vertex_bit(root);
  RelaxationFamily family;
  auto add = [&](Mask c) {
    if (c == ground) {
      family.sets.push_back(ground);
      family.generators.push_back(roots);
      return;
    }
    // Tree-maximal elements: members of C with no child in C.
    Mask gen = 0;
    for (int v : vertices_of(c)) {
      if ((spec.children[v - 1] & c) == 0) gen |= vertex_bit(v);
    }
    family.sets.push_back(c);
    family.generators.push_back(gen);
  };
  add(op(0));
  add(ground);
  for (int v = 1; v <= spec.size(); ++v) {
    const Mask a = spec.ancestry[v - 1];
    add(op(a));
    const std::vector<int> kids = vertices_of(spec.children[v - 1]);
    if (kids.size() > 16) throw SizeLimitError("density_relaxation_family: too many children");
    for (Mask pick = 1; pick < (Mask{1} << kids.size()); ++pick) {
      Mask k = 0;
      for (Mask p = pick; p != 0; p &= p - 1) k |= vertex_bit(kids[std::countr_zero(p)]);
      add(op(a | k));
    }
  }
  return family;
}

DensityPinch density_pinch(const TreeSpec& spec, const ClosureOperator& op, int base) {
  DensityPinch out;
  const DensityCoding coding = density_coding(spec, op, base);
  out.coding_valid = validate_density_coding(coding, spec).valid;
  const Entropy h = partition_entropy(coding.f.of(op.ground()), coding.f.q, coding.f.r);
  if (!h.exact) throw std::logic_error("density coding entropy is not a power-of-q value");
  out.lower = *h.exact;
  out.coding_valid = out.coding_valid && out.lower == density_entropy(coding, spec, op.ground());
  const RelaxationFamily family = density_relaxation_family(spec, op);
  const RelaxationResult bound = shannon_upper_bound(op, family);
  out.upper = bound.value;
  out.family_size = static_cast<int>(bound.sets.size());
  out.pinched = out.coding_valid && out.lower == out.upper;
  return out;
}

}  // namespace closlab

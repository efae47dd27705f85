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


#include "closlab/coding.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace closlab {
namespace {

constexpr std::uint64_t kMaxJoinTable = std::uint64_t{1} << 26;  // 2^n * m labels

// f_X for every X ⊆ V, built from f_{X \ lowest} ∨ f_lowest.
std::vector<Partition> partition_table(const CodingFunction& f) {
  const int n = f.op.size();
  require_size(f.op, kMaxTableSize, "coding-function tables");
  if (subset_count(n) * static_cast<std::uint64_t>(std::max(1, f.carrier())) > kMaxJoinTable) {
    throw SizeLimitError("coding-function table would exceed 2^26 entries");
  }
  std::vector<Partition> table(subset_count(n));
  table[0] = Partition::universal(f.carrier());
  for (Mask x = 1; x < table.size(); ++x) {
    const int v = std::countr_zero(x);
    table[x] = join_partitions(table[x & (x - 1)], f.parts[static_cast<std::size_t>(v)]);
  }
  return table;
}

void require_shape(const CodingFunction& f) {
  if (static_cast<int>(f.parts.size()) != f.op.size()) {
    throw std::invalid_argument("coding function needs one partition per vertex");
  }
  for (const Partition& p : f.parts) {
    if (p.carrier() != f.carrier()) throw std::invalid_argument("partitions differ in carrier");
  }
}

}  // namespace

Partition CodingFunction::of(Mask x) const {
  Partition out = Partition::universal(carrier());
  for (; x != 0; x &= x - 1) out = join_partitions(out, parts[static_cast<std::size_t>(std::countr_zero(x))]);
  return out;
}

ValidationReport coding_validate(const CodingFunction& f, bool all_witnesses) {
  ValidationReport report;
  const int n = f.op.size();
  if (static_cast<int>(f.parts.size()) != n) {
    report.add({"shape", 0, 0, "expected " + std::to_string(n) + " partitions"});
    return report;
  }
  const auto m = checked_power(f.q, f.r);
  for (int v = 1; v <= n; ++v) {
    if (!m || f.parts[v - 1].carrier() != *m) {
      report.add({"carrier", vertex_bit(v), 0,
                  "f_" + std::to_string(v) + " is not a partition of A^r (|A| = " +
                      std::to_string(f.q) + ", r = " + std::to_string(f.r) + ")"});
      return report;
    }
  }
  bool seen_parts = false;
  for (int v = 1; v <= n; ++v) {
    if (f.parts[v - 1].parts() > f.q && (all_witnesses || !seen_parts)) {
      seen_parts = true;
      report.add({"part-count", vertex_bit(v), 0,
                  "f_" + std::to_string(v) + " has " + std::to_string(f.parts[v - 1].parts()) +
                      " parts, more than |A| = " + std::to_string(f.q)});
    }
  }
  const std::vector<Partition> table = partition_table(f);
  for (Mask x = 0; x < table.size(); ++x) {
    const Mask cx = f.op(x);
    if (cx != x && table[x] != table[cx]) {
      report.add({"closure", x, cx, "f_X != f_cl(X) at X = " + format_subset(x) +
                                        ", cl(X) = " + format_subset(cx)});
      if (!all_witnesses) break;
    }
  }
  return report;
}

Entropy entropy_of(const CodingFunction& f, Mask x) {
  require_shape(f);
  return partition_entropy(f.of(x), f.q, f.r);
}

bool is_solution(const CodingFunction& f) {
  require_shape(f);
  const Partition full = f.of(f.op.ground());
  return full.parts() == full.carrier();
}

std::vector<Entropy> entropy_table(const CodingFunction& f) {
  require_shape(f);
  const std::vector<Partition> table = partition_table(f);
  std::vector<Entropy> out;
  out.reserve(table.size());
  for (const Partition& p : table) out.push_back(partition_entropy(p, f.q, f.r));
  return out;
}

ClosureOperator induced_closure(const CodingFunction& f) {
  const ValidationReport report = coding_validate(f);
  if (!report.valid) {
    throw ValidationError("not a coding function: " + report.violations.front().detail);
  }
  const std::vector<Partition> table = partition_table(f);
  const int n = f.op.size();
  std::vector<Mask> cl(table.size());
  for (Mask x = 0; x < table.size(); ++x) {
    Mask c = x;
    for (int v = 0; v < n; ++v) {
      const Mask bit = Mask{1} << v;
      if ((x & bit) == 0 && table[x | bit] == table[x]) c |= bit;
    }
    cl[x] = c;
  }
  ClosureOperator out(n, std::move(cl), "cl_f(" + f.op.label() + ")");
  if (const auto x = operator_le_counterexample(f.op, out)) {
    throw std::logic_error("cl <= cl_f fails at " + format_subset(*x));
  }
  return out;
}

CodingRankBounds coding_rank_bounds(const CodingFunction& f, const std::vector<Entropy>& table,
                                    const RankProfile& profile, Mask x) {
  const ClosureOperator& op = f.op;
  const Mask ground = op.ground();
  auto lrk_f = [&](Mask z) {
    const Mask outside = ground & ~z;
    std::optional<Entropy> best;
    for (Mask y = 0; y <= ground; ++y) {
      if (op(y | outside) == ground && (!best || table[y] < *best)) best = table[y];
    }
    return *best;  // Y = V always qualifies
  };
  const Mask cx = op(x);
  CodingRankBounds b;
  b.h = table[x];
  b.lower = table[ground] - table[ground & ~cx];
  b.lrk_f_closure = lrk_f(cx);
  b.lrk_f = lrk_f(x);
  b.urk_f = table[ground] - lrk_f(ground & ~x);
  b.ork = profile.ork(x);
  const Entropy ork = Entropy::of(BigRational(b.ork));
  b.chain_holds = b.lower <= b.lrk_f_closure && b.lrk_f_closure <= b.urk_f && b.urk_f <= b.h &&
                  b.h <= ork;
  return b;
}

CodingRankBounds coding_rank_bounds(const CodingFunction& f, Mask x) {
  return coding_rank_bounds(f, entropy_table(f), RankProfile(f.op), x);
}

namespace {

std::uint64_t saturating_power(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

bool is_block_sorted(const Partition& p) {
  const auto& labels = p.labels();
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (labels[i] < labels[i - 1]) return false;
  }
  const std::vector<int> sizes = p.part_sizes();
  return std::is_sorted(sizes.rbegin(), sizes.rend());
}

struct Branch {
  std::optional<Entropy> best;
  std::vector<std::size_t> best_choice;
  std::vector<std::vector<std::size_t>> solutions;
};

class Search {
 public:
  Search(const ClosureOperator& op, int q, int r, const std::vector<Partition>& cands,
         const SolveOptions& options)
      : op_(op), q_(q), r_(r), n_(op.size()), cands_(cands), options_(options) {
    // checks_[k]: X with cl(X) != X whose closure first fits in {1..k+1}.
    checks_.resize(static_cast<std::size_t>(n_));
    for (Mask x = 0; x <= op.ground(); ++x) {
      const Mask cx = op(x);
      if (cx == x || cx == 0) continue;
      checks_[static_cast<std::size_t>(std::bit_width(cx) - 1)].push_back(x);
    }
  }

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
  std::atomic<std::size_t> stop_above{std::numeric_limits<std::size_t>::max()};

  // Explores every assignment with f_1 = cands[top].
  Branch run(std::size_t top) {
    Branch out;
    std::vector<Partition> fx(subset_count(n_));
    std::vector<std::size_t> choice(static_cast<std::size_t>(n_));
    fx[0] = Partition::universal(cands_.front().carrier());
    if (!assign(0, top, fx, choice)) return out;
    descend(1, fx, choice, top, out);
    return out;
  }

 private:
  // Sets f_{k+1} = cands[c]; false when a constraint already fails.
  bool assign(int k, std::size_t c, std::vector<Partition>& fx, std::vector<std::size_t>& choice) {
    if (nodes.fetch_add(1, std::memory_order_relaxed) >= options_.budget) {
      exhausted = true;
      return false;
    }
    choice[static_cast<std::size_t>(k)] = c;
    const Mask bit = Mask{1} << k;
    for (Mask x = 0; x < bit; ++x) join_into(fx[x], cands_[c], fx[x | bit]);
    for (Mask x : checks_[static_cast<std::size_t>(k)]) {
      if (fx[x] != fx[op_(x)]) return false;
    }
    return true;
  }

  void descend(int k, std::vector<Partition>& fx, std::vector<std::size_t>& choice,
               std::size_t top, Branch& out) {
    if (exhausted || top > stop_above.load()) return;
    if (k == n_) {
      const Partition& full = fx[fx.size() - 1];
      const Entropy h = partition_entropy(full, q_, r_);
      if (!out.best || h > *out.best) {
        out.best = h;
        out.best_choice = choice;
      }
      if (options_.collect_solutions && full.parts() == full.carrier() &&
          out.solutions.size() < options_.max_collected) {
        out.solutions.push_back(choice);
      }
      if (!options_.collect_solutions && h.exact && *h.exact == BigRational(r_)) {
        // Nothing can beat r; later branches only lose ties.
        std::size_t cur = stop_above.load();
        while (top < cur && !stop_above.compare_exchange_weak(cur, top)) {
        }
      }
      return;
    }
    for (std::size_t c = 0; c < cands_.size(); ++c) {
      if (exhausted || top > stop_above.load()) return;
      if (assign(k, c, fx, choice)) descend(k + 1, fx, choice, top, out);
      if (!options_.collect_solutions && out.best && out.best->exact &&
          *out.best->exact == BigRational(r_)) {
        return;
      }
    }
  }

  const ClosureOperator& op_;
  int q_, r_, n_;
  const std::vector<Partition>& cands_;
  const SolveOptions& options_;
  std::vector<std::vector<Mask>> checks_;
};

}  // namespace

SolveResult solve_exhaustive(const ClosureOperator& op, int q, const SolveOptions& options) {
  if (q < 2) throw std::invalid_argument("alphabet size must be at least 2");
  require_size(op, 16, "solve_exhaustive");
  const int n = op.size();
  const int r = rank_of(op);
  const auto m = checked_power(q, r);
  if (!m || *m > 4096) throw SizeLimitError("carrier q^r is too large for exhaustive search");
  std::vector<Partition> cands;
  if (options.candidates) {
    cands = *options.candidates;
    for (const Partition& p : cands) {
      if (p.carrier() != *m) throw std::invalid_argument("candidate partition has the wrong carrier");
    }
  } else {
    const std::uint64_t count = canonical_partition_count(static_cast<int>(*m), q);
    if (count > 1'000'000) {
      throw BudgetExceeded("there are " + std::to_string(count) +
                           " candidate partitions per vertex; too many to enumerate");
    }
    cands = canonical_partitions(static_cast<int>(*m), q);
  }

  SolveResult result;
  result.search_space = saturating_power(cands.size(), n);
  auto build = [&](const std::vector<std::size_t>& choice) {
    CodingFunction f{op, q, r, {}};
    for (std::size_t c : choice) f.parts.push_back(cands[c]);
    return f;
  };
  if (n == 0 || cands.empty()) {
    result.best = Entropy::of(BigRational(0));
    result.complete = true;
    if (n == 0) result.best_f = CodingFunction{op, q, r, {}};
    return result;
  }

  // Permuting A^r maps coding functions to coding functions of equal entropy,
  // and every partition can be permuted to contiguous blocks of non-increasing
  // size. So f_1 can be restricted to such partitions without losing the
  // lexicographically least best assignment. Collected solutions need them all.
  std::vector<std::size_t> tops;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (options.candidates || options.collect_solutions || is_block_sorted(cands[i])) {
      tops.push_back(i);
    }
  }

  Search search(op, q, r, cands, options);
  std::vector<Branch> branches(cands.size());
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(tops.size())));
  if (threads == 1) {
    for (std::size_t top : tops) {
      if (search.exhausted || top > search.stop_above.load()) break;
      branches[top] = search.run(top);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tops.size(); i = next++) {
          const std::size_t top = tops[i];
          if (search.exhausted || top > search.stop_above.load()) break;
          branches[top] = search.run(top);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  const std::size_t stop = search.stop_above.load();
  std::optional<Entropy> best;
  const std::vector<std::size_t>* best_choice = nullptr;
  for (std::size_t top = 0; top < branches.size() && top <= stop; ++top) {
    const Branch& b = branches[top];
    if (b.best && (!best || *b.best > *best)) {
      best = b.best;
      best_choice = &b.best_choice;
    }
    for (const auto& s : b.solutions) {
      if (result.solutions.size() < options.max_collected) result.solutions.push_back(build(s));
    }
  }
  result.nodes = search.nodes.load();
  result.budget_exhausted = search.exhausted.load();
  const bool reached_rank = best && best->exact && *best->exact == BigRational(r);
  result.complete = !result.budget_exhausted || (reached_rank && !options.collect_solutions);
  result.best = best.value_or(Entropy::of(BigRational(0)));
  if (best_choice) result.best_f = build(*best_choice);
  return result;
}

Partition coordinate_partition(int q, int k, int i) {
  const auto m = checked_power(q, k);
  if (!m || i < 0 || i >= k) throw std::invalid_argument("coordinate_partition: bad arguments");
  const std::int64_t stride = *checked_power(q, i);
  std::vector<Partition::Label> labels(static_cast<std::size_t>(*m));
  for (std::int64_t e = 0; e < *m; ++e) labels[e] = static_cast<Partition::Label>((e / stride) % q);
  return Partition(labels);
}

CodingFunction c4_solution(int q) {
  const Partition a = coordinate_partition(q, 2, 0), b = coordinate_partition(q, 2, 1);
  return {from_digraph(undirected_cycle(4)).with_label("C4"), q, 2, {a, a, b, b}};
}

CodingFunction c4_literal_assignment(int q) {
  const Partition a = coordinate_partition(q, 2, 0), b = coordinate_partition(q, 2, 1);
  return {from_digraph(undirected_cycle(4)).with_label("C4"), q, 2, {a, b, a, b}};
}

namespace {

Partition coordinate_subset_partition(int base, int coords, Mask s) {
  const std::int64_t m = *checked_power(base, coords);
  std::vector<Partition::Label> labels(static_cast<std::size_t>(m));
  for (std::int64_t e = 0; e < m; ++e) {
    std::int64_t rest = e, key = 0, scale = 1;
    for (int i = 0; i < coords; ++i) {
      const std::int64_t digit = rest % base;
      rest /= base;
      if ((s >> i) & 1U) {
        key += digit * scale;
        scale *= base;
      }
    }
    labels[static_cast<std::size_t>(e)] = static_cast<Partition::Label>(key);
  }
  return Partition(labels);
}

}  // namespace

DensityCoding density_coding(const TreeSpec& spec, const ClosureOperator& op, int base) {
  if (base < 2) throw std::invalid_argument("density_coding needs |B| >= 2");
  if (op.size() != spec.size()) throw std::invalid_argument("operator does not match the tree");
  const int coords = spec.r * spec.D;
  const auto m = checked_power(base, coords);
  if (coords > 62 || !m || *m > (std::int64_t{1} << 22)) {
    throw SizeLimitError("density_coding: |B|^(rD) exceeds 2^22");
  }
  DensityCoding out;
  out.base = base;
  out.sigma = full_mask(spec.sigma);
  out.S.assign(static_cast<std::size_t>(spec.size()), 0);
  int offset = 0;
  for (int t = 0; t < spec.r; ++t) {
    out.S[spec.roots[t] - 1] = full_mask(offset + spec.N[t]) & ~full_mask(offset);
    offset += spec.N[t];
  }
  std::vector<int> handed_out(static_cast<std::size_t>(spec.size()), 0);
  for (int v = 1; v <= spec.size(); ++v) {
    const int p = spec.parent[v - 1];
    if (p == 0) continue;
    // The j-th child of p takes the j-th smallest element of Σ \ S(p).
    const int j = handed_out[p - 1]++;
    Mask fresh = out.sigma & ~out.S[p - 1];
    for (int i = 0; i < j; ++i) fresh &= fresh - 1;
    out.S[v - 1] = out.S[p - 1] | (fresh & (~fresh + 1));
  }
  const auto q = checked_power(base, spec.D);
  out.f = CodingFunction{op, static_cast<int>(*q), spec.r, {}};
  for (int v = 1; v <= spec.size(); ++v) {
    out.f.parts.push_back(coordinate_subset_partition(base, coords, out.S[v - 1]));
  }
  return out;
}

ValidationReport validate_density_coding(const DensityCoding& coding, const TreeSpec& spec) {
  ValidationReport report;
  const int n = spec.size();
  if (static_cast<int>(coding.S.size()) != n || static_cast<int>(coding.f.parts.size()) != n) {
    report.add({"shape", 0, 0, "one S(v) and one partition per vertex expected"});
    return report;
  }
  const Mask sigma = coding.sigma;
  if (sigma != full_mask(spec.sigma)) report.add({"sigma", 0, 0, "Σ != {1..DH}"});
  Mask roots = 0;
  for (int root : spec.roots) roots |= coding.S[root - 1];
  if (roots != sigma) report.add({"roots", 0, 0, "the root sets do not cover Σ"});
  for (int v = 1; v <= n; ++v) {
    const Mask s = coding.S[v - 1];
    const int p = spec.parent[v - 1];
    if (!is_subset(s, sigma)) report.add({"sigma", vertex_bit(v), 0, "S(v) leaves Σ"});
    if (cardinality(s) > spec.D) report.add({"part-count", vertex_bit(v), 0, "|S(v)| > D"});
    if (p != 0 && !is_subset(coding.S[p - 1], s)) {
      report.add({"ancestry", vertex_bit(v), 0, "S(p(v)) is not contained in S(v)"});
    }
    if (spec.children[v - 1] != 0) {
      Mask covered = 0;
      for (Mask c = spec.children[v - 1]; c != 0; c &= c - 1) {
        covered |= coding.S[static_cast<std::size_t>(std::countr_zero(c))];
      }
      if (covered != sigma) report.add({"children", vertex_bit(v), 0, "S(c(v)) != Σ"});
    }
    const Partition want =
        coordinate_subset_partition(coding.base, spec.r * spec.D, s);
    if (coding.f.parts[v - 1] != want) {
      report.add({"partition", vertex_bit(v), 0, "f_v is not g_S(v)"});
    }
    if (coding.f.parts[v - 1].parts() > coding.f.q) {
      report.add({"part-count", vertex_bit(v), 0, "f_v has more than |A| parts"});
    }
  }
  return report;
}

BigRational density_entropy(const DensityCoding& coding, const TreeSpec& spec, Mask x) {
  Mask s = 0;
  for (; x != 0; x &= x - 1) s |= coding.S[static_cast<std::size_t>(std::countr_zero(x))];
  return BigRational(cardinality(s), spec.D);
}

}  // namespace closlab

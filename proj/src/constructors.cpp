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


#include "closlab/constructors.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace closlab {

Digraph::Digraph(int n) : n_(n), in_(static_cast<std::size_t>(n), 0) {
  if (n < 0 || n > kMaxGroundSet) {
    throw SizeLimitError("digraph size must be at most " + std::to_string(kMaxGroundSet));
  }
}

Digraph::Digraph(int n, const std::vector<std::pair<int, int>>& arcs) : Digraph(n) {
  for (const auto& [u, v] : arcs) add_arc(u, v);
}

void Digraph::add_arc(int u, int v) {
  if (u < 1 || u > n_ || v < 1 || v > n_) {
    throw std::invalid_argument("arc " + std::to_string(u) + " -> " + std::to_string(v) +
                                " out of range 1.." + std::to_string(n_));
  }
  if (has_arc(u, v)) {
    throw std::invalid_argument("repeated arc " + std::to_string(u) + " -> " + std::to_string(v));
  }
  arcs_.emplace_back(u, v);
  in_[v - 1] |= vertex_bit(u);
}

bool Digraph::has_arc(int u, int v) const { return has_vertex(in_[v - 1], u); }

Digraph directed_cycle(int n) {
  Digraph d(n);
  for (int v = 1; v <= n; ++v) d.add_arc(v, v % n + 1);
  return d;
}

Digraph undirected_cycle(int n) {
  Digraph d(n);
  for (int v = 1; v <= n; ++v) {
    const int w = v % n + 1;
    if (!d.has_arc(v, w)) d.add_arc(v, w);
    if (!d.has_arc(w, v)) d.add_arc(w, v);
  }
  return d;
}

Digraph complete_digraph(int n) {
  Digraph d(n);
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      if (u != v) d.add_arc(u, v);
    }
  }
  return d;
}

Digraph all_loops(int n) {
  Digraph d(n);
  for (int v = 1; v <= n; ++v) d.add_arc(v, v);
  return d;
}

ClosureOperator uniform(int r, int n) {
  if (n < 0 || r < 0 || r > n) {
    throw std::invalid_argument("uniform(r, n) needs 0 <= r <= n, got r = " + std::to_string(r) +
                                ", n = " + std::to_string(n));
  }
  const Mask ground = full_mask(n);
  return ClosureOperator::from_evaluator(
      n, [r, ground](Mask x) { return cardinality(x) >= r ? ground : x; },
      "U_{" + std::to_string(r) + "," + std::to_string(n) + "}");
}

ClosureOperator chain(int n) {
  if (n < 1) throw std::invalid_argument("chain(n) needs n >= 1");
  return ClosureOperator::from_evaluator(
      n, [](Mask x) { return x == 0 ? Mask{0} : full_mask(std::bit_width(x)); },
      "chain(" + std::to_string(n) + ")");
}

ClosureOperator from_digraph(const Digraph& d) {
  const int n = d.size();
  std::vector<Mask> in(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) in[v - 1] = d.in_neighbors(v);
  const Mask ground = full_mask(n);
  return ClosureOperator::from_evaluator(
      n,
      [in = std::move(in), ground](Mask x) {
        Mask z = x;
        for (bool grew = true; grew;) {
          grew = false;
          for (Mask rest = ground & ~z; rest != 0; rest &= rest - 1) {
            const int i = std::countr_zero(rest);
            if (is_subset(in[i], z)) {
              z |= Mask{1} << i;
              grew = true;
            }
          }
        }
        return z;
      },
      "digraph(" + std::to_string(n) + ")");
}

namespace {

bool induces_acyclic(const Digraph& d, Mask y) {
  // Kahn on the induced subgraph; a loop keeps its vertex's in-degree positive.
  Mask left = y;
  for (bool progress = true; progress && left != 0;) {
    progress = false;
    for (Mask rest = left; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      if ((d.in_neighbors(i + 1) & left) == 0) {
        left &= ~(Mask{1} << i);
        progress = true;
      }
    }
  }
  return left == 0;
}

}  // namespace

ClosureOperator dclosure_bruteforce(const Digraph& d) {
  const int n = d.size();
  if (n > 7) throw SizeLimitError("dclosure_bruteforce supports n <= 7");
  const Mask ground = full_mask(n);
  std::vector<Mask> table(subset_count(n));
  for (Mask x = 0; x <= ground; ++x) {
    Mask best = 0;
    const Mask rest = ground & ~x;
    for (Mask y = rest;; y = (y - 1) & rest) {
      Mask preds = 0;
      for (Mask m = y; m != 0; m &= m - 1) preds |= d.in_neighbors(std::countr_zero(m) + 1);
      if (cardinality(y) > cardinality(best) && is_subset(preds, x | y) && induces_acyclic(d, y)) {
        best = y;
      }
      if (y == 0) break;
    }
    table[x] = x | best;
  }
  return ClosureOperator(n, std::move(table), "digraph-bruteforce(" + std::to_string(n) + ")");
}

const char* union_kind_name(UnionKind kind) {
  switch (kind) {
    case UnionKind::kDisjoint: return "disjoint";
    case UnionKind::kUnidirectional: return "unidirectional";
    case UnionKind::kBidirectional: return "bidirectional";
  }
  return "?";
}

ClosureOperator union_combine(const ClosureOperator& op1, const ClosureOperator& op2,
                              UnionKind kind) {
  const int n1 = op1.size();
  const int n2 = op2.size();
  if (n1 + n2 > kMaxGroundSet) throw SizeLimitError("union exceeds the ground-set cap");
  const Mask v1 = full_mask(n1);
  const Mask v2 = full_mask(n2);
  std::string label = std::string(union_kind_name(kind)) + "(" + op1.label() + ", " +
                      op2.label() + ")";
  ClosureOperator::Evaluator eval;
  switch (kind) {
    case UnionKind::kDisjoint:
      eval = [=](Mask x) { return op1(x & v1) | (op2(x >> n1) << n1); };
      break;
    case UnionKind::kUnidirectional:
      eval = [=](Mask x) {
        const Mask x1 = x & v1;
        const Mask x2 = x >> n1;
        const Mask c1 = op1(x1);
        return c1 == v1 ? v1 | (op2(x2) << n1) : c1 | (x2 << n1);
      };
      break;
    case UnionKind::kBidirectional:
      eval = [=](Mask x) {
        const Mask x1 = x & v1;
        const Mask x2 = x >> n1;
        if (x1 == v1) return v1 | (op2(x2) << n1);
        if (x2 == v2) return op1(x1) | (v2 << n1);
        return x;
      };
      break;
    default:
      throw std::invalid_argument("unknown union kind");
  }
  return ClosureOperator::from_evaluator(n1 + n2, std::move(eval), std::move(label));
}

Mask TreeSpec::ancestry_of(Mask x) const {
  Mask a = 0;
  for (; x != 0; x &= x - 1) a |= ancestry[static_cast<std::size_t>(std::countr_zero(x))];
  return a;
}

bool TreeSpec::triggers(Mask y) const {
  for (Mask c : children) {
    if (c != 0 && is_subset(c, y)) return true;
  }
  for (Mask t : tree_mask) {
    if ((t & y) == 0) return false;
  }
  return true;
}

namespace {

// Σ_{k=0}^{L} C!/(C-k)!, or -1 once it passes the ground-set cap.
std::int64_t tree_size(int l, int c) {
  std::int64_t level = 1;
  std::int64_t total = 1;
  for (int k = 0; k < l; ++k) {
    level *= c - k;
    total += level;
    if (total > kMaxGroundSet) return -1;
  }
  return total;
}

}  // namespace

std::pair<ClosureOperator, TreeSpec> density_tree(int r, const BigRational& H) {
  if (r < 2) throw std::invalid_argument("density_tree needs r >= 2");
  if (H <= BigRational(1) || H > BigRational(r)) {
    throw std::invalid_argument("density_tree needs H in (1, r], got H = " + H.str());
  }
  if (!H.fits_int64()) throw SizeLimitError("H has an oversized numerator or denominator");
  const std::int64_t b = H.small_den();
  TreeSpec spec;
  spec.r = r;
  spec.H = H;
  if (H == BigRational(r)) {
    spec.degenerate = true;
    spec.D = 1;
    spec.N.assign(static_cast<std::size_t>(r), 1);
  } else {
    // Smallest multiple of b for which N_1..N_{r-1} in [1, D-1] can sum to D(H-1).
    const BigRational need(r - 1);
    std::int64_t d = b;
    while (BigRational(d) * (H - 1) < need || BigRational(d) * (BigRational(r) - H) < need) {
      d += b;
      if (d > kMaxGroundSet) throw SizeLimitError("density_tree: D exceeds the ground-set cap");
    }
    spec.D = static_cast<int>(d);
    const BigRational m = BigRational(d) * (H - 1);
    const std::int64_t total = m.small_num();
    for (int t = 0; t < r - 1; ++t) {
      spec.N.push_back(static_cast<int>(total / (r - 1) + (t < total % (r - 1) ? 1 : 0)));
    }
    spec.N.push_back(spec.D);
  }
  const BigRational sigma = BigRational(spec.D) * H;
  spec.sigma = static_cast<int>(sigma.small_num());
  std::int64_t n = 0;
  for (int t = 0; t < r; ++t) {
    spec.L.push_back(spec.D - spec.N[t]);
    spec.C.push_back(spec.sigma - spec.N[t]);
    const std::int64_t size = tree_size(spec.L[t], spec.C[t]);
    if (size < 0 || n + size > kMaxGroundSet) {
      throw SizeLimitError("density_tree(" + std::to_string(r) + ", " + H.str() + ") needs more than " +
                           std::to_string(kMaxGroundSet) + " vertices");
    }
    n += size;
  }

  for (int t = 0; t < r; ++t) {
    const int root = spec.size() + 1;
    spec.roots.push_back(root);
    spec.parent.push_back(0);
    spec.level.push_back(0);
    spec.tree.push_back(t + 1);
    std::vector<int> frontier{root};
    for (int k = 0; k < spec.L[t]; ++k) {
      std::vector<int> next;
      for (int v : frontier) {
        for (int j = 0; j < spec.C[t] - k; ++j) {
          spec.parent.push_back(v);
          spec.level.push_back(k + 1);
          spec.tree.push_back(t + 1);
          next.push_back(spec.size());
        }
      }
      frontier = std::move(next);
    }
  }
  const int size = spec.size();
  spec.ancestry.assign(static_cast<std::size_t>(size), 0);
  spec.children.assign(static_cast<std::size_t>(size), 0);
  spec.tree_mask.assign(static_cast<std::size_t>(r), 0);
  for (int v = 1; v <= size; ++v) {
    const int p = spec.parent[v - 1];
    spec.ancestry[v - 1] = vertex_bit(v) | (p == 0 ? 0 : spec.ancestry[p - 1]);  // parents come first
    if (p != 0) spec.children[p - 1] |= vertex_bit(v);
    spec.tree_mask[spec.tree[v - 1] - 1] |= vertex_bit(v);
  }

  const Mask ground = full_mask(size);
  auto eval = [spec, ground](Mask x) {
    const Mask a = spec.ancestry_of(x);
    return spec.triggers(a) ? ground : a;
  };
  ClosureOperator op = ClosureOperator::from_evaluator(
      size, std::move(eval), "tree(" + std::to_string(r) + "," + H.str() + ")");
  return {std::move(op), std::move(spec)};
}

ValidationReport validate_tree_structure(const TreeSpec& spec, const ClosureOperator& op,
                                         int samples, std::uint64_t seed) {
  ValidationReport report;
  auto fail = [&](const std::string& rule, Mask x, const std::string& detail) {
    report.add({rule, x, 0, detail});
  };
  const int n = spec.size();
  const int r = spec.r;
  if (op.size() != n) {
    fail("shape", 0, "operator and tree sizes differ");
    return report;
  }
  if (static_cast<int>(spec.N.size()) != r || static_cast<int>(spec.roots.size()) != r) {
    fail("shape", 0, "expected one (N, L, C, root) per tree");
    return report;
  }

  // Parameter relations.
  std::int64_t sum_n = 0;
  for (int t = 0; t < r; ++t) {
    sum_n += spec.N[t];
    if (spec.L[t] != spec.D - spec.N[t] || spec.C[t] != spec.sigma - spec.N[t]) {
      fail("parameters", 0, "L_t = D - N_t or C_t = DH - N_t fails at t = " + std::to_string(t + 1));
    }
    if (!spec.degenerate && t < r - 1 && (spec.N[t] <= 0 || spec.N[t] >= spec.D)) {
      fail("parameters", 0, "N_t outside (0, D) at t = " + std::to_string(t + 1));
    }
  }
  if (spec.N[r - 1] != spec.D) fail("parameters", 0, "N_r != D");
  if (BigRational(sum_n) != spec.H * BigRational(spec.D) || spec.sigma != sum_n) {
    fail("parameters", 0, "sum of N_t differs from D*H");
  }
  if (!spec.degenerate && BigRational(spec.D) * (spec.H - 1) < BigRational(r - 1)) {
    fail("parameters", 0, "D < (r-1)/(H-1)");
  }

  // Tree shape: level sizes and child counts.
  for (int t = 0; t < r; ++t) {
    std::vector<std::int64_t> per_level(static_cast<std::size_t>(spec.L[t]) + 1, 0);
    for (int v = 1; v <= n; ++v) {
      if (spec.tree[v - 1] != t + 1) continue;
      const int k = spec.level[v - 1];
      if (k < 0 || k > spec.L[t]) {
        fail("shape", vertex_bit(v), "vertex level outside 0..L");
        continue;
      }
      ++per_level[k];
      const int kids = cardinality(spec.children[v - 1]);
      const int want = k < spec.L[t] ? spec.C[t] - k : 0;
      if (kids != want) {
        fail("shape", vertex_bit(v), "vertex at level " + std::to_string(k) + " has " +
                                         std::to_string(kids) + " children, expected " +
                                         std::to_string(want));
      }
      const int p = spec.parent[v - 1];
      if ((k == 0) != (p == 0) || (p != 0 && spec.level[p - 1] != k - 1)) {
        fail("shape", vertex_bit(v), "parent is not one level up");
      }
    }
    std::int64_t expect = 1;
    for (int k = 0; k <= spec.L[t]; ++k) {
      if (per_level[k] != expect) {
        fail("shape", 0, "tree " + std::to_string(t + 1) + " level " + std::to_string(k) +
                             " has " + std::to_string(per_level[k]) + " vertices, expected " +
                             std::to_string(expect));
      }
      expect *= spec.C[t] - k;
    }
  }

  // a is a closure: v ∈ a(v) and a(v) = {v} ∪ a(p(v)), so u ∈ a(v) ⇒ a(u) ⊆ a(v).
  for (int v = 1; v <= n; ++v) {
    const int p = spec.parent[v - 1];
    const Mask want = vertex_bit(v) | (p == 0 ? 0 : spec.ancestry[p - 1]);
    if (spec.ancestry[v - 1] != want) fail("ancestry", vertex_bit(v), "a(v) != {v} ∪ a(p(v))");
  }

  // The operator agrees with the factorization on V, ∅, all singletons and
  // pairs, and random samples.
  const Mask ground = full_mask(n);
  auto check = [&](Mask x) {
    const Mask a = spec.ancestry_of(x);
    const Mask want = spec.triggers(a) ? ground : a;
    if (op(x) != want) fail("factorization", x, "cl(X) differs from the tree formula");
  };
  check(0);
  check(ground);
  for (int u = 1; u <= n; ++u) {
    check(vertex_bit(u));
    for (int v = u + 1; v <= n; ++v) check(vertex_bit(u) | vertex_bit(v));
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) check(rng() & ground);
  return report;
}

ClosureOperator moore_closure(int n, const std::vector<Mask>& family) {
  if (n > kMaxTableSize) throw SizeLimitError("moore_closure supports n <= 20");
  const Mask ground = full_mask(n);
  std::vector<Mask> members;
  for (Mask f : family) {
    if (!is_subset(f, ground)) throw std::invalid_argument("family member outside V");
    members.push_back(f);
  }
  std::vector<Mask> table(subset_count(n));
  for (Mask x = 0; x <= ground; ++x) {
    Mask c = ground;
    for (Mask f : members) {
      if (is_subset(x, f)) c &= f;
    }
    table[x] = c;
  }
  return ClosureOperator(n, std::move(table), "moore(" + std::to_string(n) + ")");
}

ClosureOperator random_moore(int n, std::uint64_t seed) {
  if (n < 1 || n > 10) throw std::invalid_argument("random_moore needs 1 <= n <= 10");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(0, 2 * n + 1);
  std::uniform_real_distribution<double> density(0.15, 0.9);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int k = count(rng);
  const double p = density(rng);
  std::vector<Mask> family;
  for (int i = 0; i < k; ++i) {
    Mask f = 0;
    for (int v = 1; v <= n; ++v) {
      if (coin(rng) < p) f |= vertex_bit(v);
    }
    family.push_back(f);
  }
  return moore_closure(n, family).with_label("random_moore(" + std::to_string(n) + ", " +
                                             std::to_string(seed) + ")");
}

}  // namespace closlab

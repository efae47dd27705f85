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


#ifndef CLOSLAB_CONSTRUCTORS_HPP_
#define CLOSLAB_CONSTRUCTORS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "closlab/closure.hpp"
#include "closlab/rational.hpp"

namespace closlab {

// Directed graph on {1..n}. Loops are allowed, repeated arcs are not.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);
  Digraph(int n, const std::vector<std::pair<int, int>>& arcs);

  // Throws std::invalid_argument on out-of-range endpoints or a repeated arc.
  void add_arc(int u, int v);
  bool has_arc(int u, int v) const;

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }  // insertion order
  Mask in_neighbors(int v) const { return in_[v - 1]; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<Mask> in_;
};

Digraph directed_cycle(int n);
Digraph undirected_cycle(int n);  // both orientations of every cycle edge
Digraph complete_digraph(int n);  // every ordered pair u != v
Digraph all_loops(int n);

ClosureOperator uniform(int r, int n);
ClosureOperator chain(int n);

// D-closure as the least fixpoint of Z -> Z ∪ {v : N⁻(v) ⊆ Z} from Z = X.
ClosureOperator from_digraph(const Digraph& d);

// X ∪ Y for the largest acyclic Y ⊆ V\X with N⁻(Y) ⊆ X ∪ Y, found by trying
// every Y. Oracle for from_digraph; n <= 7.
ClosureOperator dclosure_bruteforce(const Digraph& d);

enum class UnionKind { kDisjoint, kUnidirectional, kBidirectional };

const char* union_kind_name(UnionKind kind);

// op1 acts on V1 = {1..n1}, op2 is shifted onto V2 = {n1+1..n1+n2}.
ClosureOperator union_combine(const ClosureOperator& op1, const ClosureOperator& op2,
                              UnionKind kind);

// Parameters and shape of the tree operator. Vertices are numbered tree by
// tree in breadth-first order; all per-vertex vectors are indexed by v-1.
struct TreeSpec {
  int r = 0;
  BigRational H;
  int D = 0;
  int sigma = 0;            // |Σ| = D·H
  bool degenerate = false;  // H = r: r single-vertex trees, the operator is U_{r,r}
  std::vector<int> N, L, C;  // per tree t = 1..r, stored at t-1
  std::vector<int> roots;
  std::vector<int> parent;  // 0 for roots
  std::vector<int> level;
  std::vector<int> tree;  // 1-based tree index
  std::vector<Mask> ancestry;
  std::vector<Mask> children;
  std::vector<Mask> tree_mask;  // per tree

  int size() const { return static_cast<int>(parent.size()); }
  Mask ancestry_of(Mask x) const;
  // True when a(X) covers some child set c(v) or meets every tree.
  bool triggers(Mask ancestry_closed) const;
};

// Closure operator of rank r whose entropy is H, for rational H in (1, r].
// Throws std::invalid_argument outside that range and SizeLimitError when the
// trees need more than kMaxGroundSet vertices.
std::pair<ClosureOperator, TreeSpec> density_tree(int r, const BigRational& H);

// Checks the tree shape (levels, child counts, |l_k| = C!/(C-k)!, N/L/C/D
// relations) and that the operator factors as cl(X) = V if triggers(a(X))
// else a(X) with a an ancestry closure. That factorization is a closure
// operator because a is one and triggers() is monotone, so this validates the
// axioms without sweeping 2^V.
ValidationReport validate_tree_structure(const TreeSpec& spec, const ClosureOperator& op,
                                         int samples = 2000, std::uint64_t seed = 1);

// cl(X) = intersection of the members of family ∪ {V} that contain X.
ClosureOperator moore_closure(int n, const std::vector<Mask>& family);

// Random Moore family on n <= 10 vertices; deterministic in seed.
ClosureOperator random_moore(int n, std::uint64_t seed);

}  // namespace closlab

#endif  // CLOSLAB_CONSTRUCTORS_HPP_

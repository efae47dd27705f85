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

// Subsets of the ground set V = {1..n} as bitmasks. Vertex v lives in bit
// v-1; every external representation (text, JSON) is 1-indexed.

#ifndef CLOSLAB_MASK_HPP_
#define CLOSLAB_MASK_HPP_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "closlab/errors.hpp"

namespace closlab {

using Mask = std::uint64_t;

// Largest ground set an operator may have at all (implicit evaluators only).
inline constexpr int kMaxGroundSet = 62;
// Largest ground set for anything that stores or sweeps all 2^n subsets.
inline constexpr int kMaxTableSize = 20;
// Tables up to this size are filled eagerly; above it they are memoized.
inline constexpr int kEagerTableSize = 16;
// Default cap for operations that sweep pairs of subsets (4^n work).
inline constexpr int kDefaultPairSweepCap = 13;

constexpr Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
constexpr Mask vertex_bit(int v) { return Mask{1} << (v - 1); }
constexpr int cardinality(Mask x) { return std::popcount(x); }
constexpr bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }
constexpr bool has_vertex(Mask x, int v) { return (x >> (v - 1)) & 1U; }
constexpr std::size_t subset_count(int n) { return std::size_t{1} << n; }

// Next mask with the same popcount in increasing numeric order (Gosper).
constexpr Mask next_same_size(Mask x) {
  const Mask c = x & (~x + 1);
  const Mask r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

// Calls f(mask) for every k-subset of {1..n} in increasing bit order.
// f returns false to stop early; the return value reports completion.
template <class F>
bool for_each_k_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return true;
  if (k == 0) return f(Mask{0});
  const Mask limit = full_mask(n);
  for (Mask x = full_mask(k);; x = next_same_size(x)) {
    if (!f(x)) return false;
    if (x == (limit & ~full_mask(n - k))) break;  // last k-subset
  }
  return true;
}

inline Mask mask_of(std::initializer_list<int> vertices) {
  Mask m = 0;
  for (int v : vertices) m |= vertex_bit(v);
  return m;
}

std::vector<int> vertices_of(Mask x);

// "{1,3,4}", "{}" for the empty set.
std::string format_subset(Mask x);

// Accepts "{1,3}", "{ 1, 3 }", "{}"; vertices must lie in 1..n.
Mask parse_subset(std::string_view text, int n);

}  // namespace closlab

#endif  // CLOSLAB_MASK_HPP_

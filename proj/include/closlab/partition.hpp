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


// Set partitions of a carrier {0..m-1} and their entropy.

#ifndef CLOSLAB_PARTITION_HPP_
#define CLOSLAB_PARTITION_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "closlab/rational.hpp"

namespace closlab {

// A partition in canonical form: element i carries the index of its part and
// parts are numbered in order of first appearance (a restricted-growth string).
class Partition {
 public:
  using Label = std::uint32_t;

  Partition() = default;
  // Any labelling; equal labels mean the same part. Canonicalized here.
  explicit Partition(const std::vector<Label>& labels);

  static Partition universal(int m);  // one part
  static Partition equality(int m);   // all singletons

  int carrier() const { return static_cast<int>(labels_.size()); }
  int parts() const { return parts_; }
  const std::vector<Label>& labels() const { return labels_; }
  std::vector<int> part_sizes() const;

  // One base-36 digit per element, e.g. "0101". Needs at most 36 parts.
  std::string rgs() const;
  static Partition parse_rgs(std::string_view text);

  friend bool operator==(const Partition&, const Partition&) = default;
  friend void join_into(const Partition& f, const Partition& g, Partition& out);
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.labels_ <=> b.labels_;
  }

 private:
  std::vector<Label> labels_;
  int parts_ = 0;
};

// Common refinement. Throws std::invalid_argument on carrier mismatch.
// Same as out = join_partitions(f, g), reusing out's storage. out may alias neither input.
void join_into(const Partition& f, const Partition& g, Partition& out);
Partition join_partitions(const Partition& f, const Partition& g);

// Every partition of {0..m-1} into at most max_parts parts, in lexicographic
// order of the restricted-growth string.
std::vector<Partition> canonical_partitions(int m, int max_parts);
// Their number, sum_{k<=max_parts} S(m, k); saturates at UINT64_MAX.
std::uint64_t canonical_partition_count(int m, int max_parts);

// Entropy value. Exact whenever every logarithm involved is rational;
// otherwise only the double is set and comparisons use kEntropyTolerance.
struct Entropy {
  std::optional<BigRational> exact;
  double approx = 0;

  static Entropy of(const BigRational& v) { return {v, v.to_double()}; }
  std::string str() const;
};

inline constexpr double kEntropyTolerance = 1e-12;

bool operator==(const Entropy& a, const Entropy& b);
bool operator<(const Entropy& a, const Entropy& b);
inline bool operator<=(const Entropy& a, const Entropy& b) { return a < b || a == b; }
inline bool operator>(const Entropy& a, const Entropy& b) { return b < a; }
inline bool operator>=(const Entropy& a, const Entropy& b) { return b <= a; }
Entropy operator+(const Entropy& a, const Entropy& b);
Entropy operator-(const Entropy& a, const Entropy& b);

// H(g) = r - q^{-r} sum_i |P_i| log_q |P_i| for a partition of q^r elements.
// Throws std::invalid_argument when the carrier is not q^r.
Entropy partition_entropy(const Partition& g, int q, int r);

// q^r, or nullopt beyond 2^31.
std::optional<std::int64_t> checked_power(std::int64_t q, int r);

}  // namespace closlab

#endif  // CLOSLAB_PARTITION_HPP_

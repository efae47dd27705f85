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


#include "closlab/partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "closlab/errors.hpp"

namespace closlab {

Partition::Partition(const std::vector<Label>& labels) {
  labels_.resize(labels.size());
  std::unordered_map<Label, Label> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [it, fresh] = seen.try_emplace(labels[i], static_cast<Label>(seen.size()));
    labels_[i] = it->second;
  }
  parts_ = static_cast<int>(seen.size());
}

Partition Partition::universal(int m) {
  Partition p;
  p.labels_.assign(static_cast<std::size_t>(m), 0);
  p.parts_ = m > 0 ? 1 : 0;
  return p;
}

Partition Partition::equality(int m) {
  Partition p;
  p.labels_.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p.labels_[i] = static_cast<Label>(i);
  p.parts_ = m;
  return p;
}

std::vector<int> Partition::part_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(parts_), 0);
  for (Label l : labels_) ++sizes[l];
  return sizes;
}

std::string Partition::rgs() const {
  if (parts_ > 36) throw std::invalid_argument("rgs text supports at most 36 parts");
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  out.reserve(labels_.size());
  for (Label l : labels_) out += kDigits[l];
  return out;
}

Partition Partition::parse_rgs(std::string_view text) {
  std::vector<Label> labels;
  Label next = 0;
  for (char c : text) {
    Label v;
    if (c >= '0' && c <= '9') {
      v = static_cast<Label>(c - '0');
    } else if (c >= 'a' && c <= 'z') {
      v = static_cast<Label>(c - 'a' + 10);
    } else {
      throw ParseError(std::string("bad character '") + c + "' in partition \"" +
                       std::string(text) + "\"");
    }
    if (v > next) {
      throw ParseError("partition \"" + std::string(text) + "\" is not a restricted-growth string");
    }
    if (v == next) ++next;
    labels.push_back(v);
  }
  return Partition(labels);
}

void join_into(const Partition& f, const Partition& g, Partition& out) {
  if (f.carrier() != g.carrier()) {
    throw std::invalid_argument("join of partitions with carriers " + std::to_string(f.carrier()) +
                                " and " + std::to_string(g.carrier()));
  }
  using Label = Partition::Label;
  constexpr Label kUnset = std::numeric_limits<Label>::max();
  const std::size_t m = static_cast<std::size_t>(f.carrier());
  const std::uint64_t kb = static_cast<std::uint64_t>(g.parts());
  const std::uint64_t cells = static_cast<std::uint64_t>(f.parts()) * kb;
  const Label* fl = f.labels_.data();
  const Label* gl = g.labels_.data();
  out.labels_.resize(m);
  Label* ol = out.labels_.data();
  Label next = 0;
  // Relabelling in first-appearance order keeps the result canonical.
  if (cells <= 256) {
    std::array<Label, 256> slot;
    std::fill_n(slot.begin(), cells, kUnset);
    for (std::size_t i = 0; i < m; ++i) {
      Label& s = slot[fl[i] * kb + gl[i]];
      if (s == kUnset) s = next++;
      ol[i] = s;
    }
  } else if (cells <= 4 * m + 1024) {
    std::vector<Label> slot(cells, kUnset);
    for (std::size_t i = 0; i < m; ++i) {
      Label& s = slot[fl[i] * kb + gl[i]];
      if (s == kUnset) s = next++;
      ol[i] = s;
    }
  } else {
    std::unordered_map<std::uint64_t, Label> seen;
    for (std::size_t i = 0; i < m; ++i) {
      ol[i] = seen.try_emplace(fl[i] * kb + gl[i], next).first->second;
      if (ol[i] == next) ++next;
    }
  }
  out.parts_ = static_cast<int>(next);
}

Partition join_partitions(const Partition& f, const Partition& g) {
  Partition out;
  join_into(f, g, out);
  return out;
}

namespace {

void rgs_extend(int m, int max_parts, std::vector<Partition::Label>& prefix, int used,
                std::vector<Partition>& out) {
  if (static_cast<int>(prefix.size()) == m) {
    out.emplace_back(prefix);
    return;
  }
  const int top = std::min(used + 1, max_parts);
  for (int v = 0; v < top; ++v) {
    prefix.push_back(static_cast<Partition::Label>(v));
    rgs_extend(m, max_parts, prefix, std::max(used, v + 1), out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> canonical_partitions(int m, int max_parts) {
  if (m < 0 || max_parts < 0) throw std::invalid_argument("canonical_partitions: negative size");
  std::vector<Partition> out;
  if (m == 0) {
    out.emplace_back();
    return out;
  }
  if (max_parts == 0) return out;
  std::vector<Partition::Label> prefix;
  rgs_extend(m, max_parts, prefix, 0, out);
  return out;
}

std::uint64_t canonical_partition_count(int m, int max_parts) {
  constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();
  auto sat_add = [](std::uint64_t a, std::uint64_t b) { return a > kSat - b ? kSat : a + b; };
  auto sat_mul = [](std::uint64_t a, std::uint64_t b) {
    return (a != 0 && b > kSat / a) ? kSat : a * b;
  };
  // Stirling numbers of the second kind, row by row.
  std::vector<std::uint64_t> s(static_cast<std::size_t>(max_parts) + 1, 0);
  s[0] = 1;
  for (int i = 1; i <= m; ++i) {
    for (int k = std::min(i, max_parts); k >= 1; --k) s[k] = sat_add(sat_mul(k, s[k]), s[k - 1]);
    s[0] = 0;
  }
  std::uint64_t total = 0;
  for (std::uint64_t v : s) total = sat_add(total, v);
  return total;
}

std::string Entropy::str() const {
  if (exact) return exact->str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", approx);
  return buf;
}

bool operator==(const Entropy& a, const Entropy& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  return std::fabs(a.approx - b.approx) <= kEntropyTolerance;
}

bool operator<(const Entropy& a, const Entropy& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  return a.approx < b.approx - kEntropyTolerance;
}

Entropy operator+(const Entropy& a, const Entropy& b) {
  if (a.exact && b.exact) return Entropy::of(*a.exact + *b.exact);
  return {std::nullopt, a.approx + b.approx};
}

Entropy operator-(const Entropy& a, const Entropy& b) {
  if (a.exact && b.exact) return Entropy::of(*a.exact - *b.exact);
  return {std::nullopt, a.approx - b.approx};
}

std::optional<std::int64_t> checked_power(std::int64_t q, int r) {
  std::int64_t out = 1;
  for (int i = 0; i < r; ++i) {
    out *= q;
    if (out > (std::int64_t{1} << 31)) return std::nullopt;
  }
  return out;
}

namespace {

// Exponent e with base^e = value, if any.
std::optional<int> exact_log(std::int64_t value, std::int64_t base) {
  int e = 0;
  while (value > 1) {
    if (value % base != 0) return std::nullopt;
    value /= base;
    ++e;
  }
  return value == 1 ? std::optional<int>(e) : std::nullopt;
}

}  // namespace

Entropy partition_entropy(const Partition& g, int q, int r) {
  if (q < 2 || r < 0) throw std::invalid_argument("partition_entropy needs q >= 2, r >= 0");
  const auto m = checked_power(q, r);
  if (!m || *m != g.carrier()) {
    throw std::invalid_argument("partition carrier " + std::to_string(g.carrier()) + " is not " +
                                std::to_string(q) + "^" + std::to_string(r));
  }
  // q = c^j with c as small as possible; log_q(c^i) = i/j is rational.
  std::int64_t c = 2;
  while (!exact_log(q, c)) ++c;
  const int j = *exact_log(q, c);

  const std::vector<int> sizes = g.part_sizes();
  BigRational weighted;  // sum |P| log_c |P|
  bool exact = true;
  double approx = 0;
  for (int s : sizes) {
    approx += s * std::log(static_cast<double>(s));
    if (const auto i = exact_log(s, c)) {
      weighted += BigRational(static_cast<std::int64_t>(s) * *i);
    } else {
      exact = false;
    }
  }
  const double value = r - approx / std::log(static_cast<double>(q)) / static_cast<double>(*m);
  if (!exact) return {std::nullopt, value};
  return Entropy::of(BigRational(r) - weighted / BigRational(static_cast<std::int64_t>(j) * *m));
}

}  // namespace closlab

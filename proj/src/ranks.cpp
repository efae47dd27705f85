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


#include "closlab/ranks.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace closlab {
namespace {

constexpr std::int8_t kInf = 127;

void check_subset(const ClosureOperator& op, Mask x) {
  if (!is_subset(x, op.ground())) {
    throw std::out_of_range("subset " + format_subset(x) + " is not contained in V");
  }
}

// For every mask m: out[m] = min over supersets of m.
void superset_min(int n, std::vector<std::int8_t>& values) {
  for (int i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    for (Mask m = 0; m < values.size(); ++m) {
      if ((m & bit) == 0) values[m] = std::min(values[m], values[m | bit]);
    }
  }
}

}  // namespace

RankValue outer_rank(const ClosureOperator& op, Mask x) {
  check_subset(op, x);
  RankValue out;
  for (int k = 0; k <= op.size(); ++k) {
    const bool done = !for_each_k_subset(op.size(), k, [&](Mask b) {
      if (!is_subset(x, op(b))) return true;
      out = {k, b};
      return false;
    });
    if (done) return out;
  }
  throw std::logic_error("outer_rank: cl(V) does not contain X");
}

RankValue inner_rank(const ClosureOperator& op, Mask x) {
  check_subset(op, x);
  const Mask target = op(x);
  RankValue out;
  for (int k = 0; k <= op.size(); ++k) {
    const bool done = !for_each_k_subset(op.size(), k, [&](Mask b) {
      if (op(b) != target) return true;
      out = {k, b};
      return false;
    });
    if (done) return out;
  }
  throw std::logic_error("inner_rank: no generating set found");
}

namespace {

RankValue lower_rank_sweep(const ClosureOperator& op, Mask x) {
  const Mask ground = op.ground();
  const Mask outside = ground & ~x;
  RankValue out;
  for (int k = 0; k <= op.size(); ++k) {
    const bool done = !for_each_k_subset(op.size(), k, [&](Mask y) {
      if (op(y | outside) != ground) return true;
      out = {k, y};
      return false;
    });
    if (done) return out;
  }
  throw std::logic_error("lower rank: cl(V) != V");
}

}  // namespace

LowerUpperRank lower_upper_rank(const ClosureOperator& op, Mask x) {
  check_subset(op, x);
  const int r = rank_of(op);
  const RankValue lower = lower_rank_sweep(op, x);
  const RankValue lower_complement = lower_rank_sweep(op, op.ground() & ~x);
  return {lower.value, r - lower_complement.value, lower.witness};
}

int upper_rank_alternate(const ClosureOperator& op, Mask x) {
  check_subset(op, x);
  require_size(op, kMaxTableSize, "upper_rank_alternate");
  const Mask ground = op.ground();
  int best = op.size() + 1;
  for (Mask y = 0; y <= ground; ++y) {
    if (op(x | y) == ground) best = std::min(best, outer_rank(op, y).value);
  }
  return rank_of(op) - best;
}

RankProfile::RankProfile(ClosureOperator op) : op_(std::move(op)) {
  require_size(op_, kMaxTableSize, "RankProfile");
  const int n = op_.size();
  const Mask ground = op_.ground();
  const std::vector<Mask> table = op_.materialize();
  const std::size_t count = table.size();

  // h[C] = min{|b| : cl(b) = C} on closed sets.
  std::vector<std::int8_t> h(count, kInf);
  for (Mask b = 0; b < count; ++b) {
    auto& slot = h[table[b]];
    slot = std::min<std::int8_t>(slot, static_cast<std::int8_t>(cardinality(b)));
  }
  rank_ = h[ground];
  irk_.resize(count);
  for (Mask x = 0; x < count; ++x) irk_[x] = h[table[x]];
  ork_ = std::move(h);
  superset_min(n, ork_);

  spanning_.assign(count, kInf);
  for (Mask z = 0; z < count; ++z) {
    if (table[z] == ground) spanning_[z] = static_cast<std::int8_t>(cardinality(z));
  }
  superset_min(n, spanning_);
  lrk_.resize(count);
  for (Mask x = 0; x < count; ++x) {
    const Mask outside = ground & ~x;
    lrk_[x] = static_cast<std::int8_t>(spanning_[outside] - cardinality(outside));
  }
}

Mask RankProfile::span(Mask x) const {
  const int o = ork(x);
  Mask out = x;
  for (Mask rest = ground() & ~x; rest != 0; rest &= rest - 1) {
    const Mask v = rest & (~rest + 1);
    if (ork(x | v) == o) out |= v;
  }
  return out;
}

Mask RankProfile::upper_span(Mask x) const {
  const int u = urk(x);
  Mask out = x;
  for (Mask rest = ground() & ~x; rest != 0; rest &= rest - 1) {
    const Mask v = rest & (~rest + 1);
    if (urk(x | v) == u) out |= v;
  }
  return out;
}

int RankProfile::upper_rank_via_flats(Mask x) const {
  int best = size() + 1;
  for (Mask f = 0; f <= ground(); ++f) {
    if (is_flat(f) && op_(x | f) == ground()) best = std::min(best, ork(f));
  }
  return rank_ - best;
}

std::vector<Mask> flats(const RankProfile& profile) {
  std::vector<Mask> out;
  for (Mask f = 0; f <= profile.ground(); ++f) {
    if (profile.is_flat(f)) out.push_back(f);
  }
  return out;
}

std::vector<Mask> upper_flats(const RankProfile& profile) {
  std::vector<Mask> out;
  for (Mask f = 0; f <= profile.ground(); ++f) {
    if (profile.is_upper_flat(f)) out.push_back(f);
  }
  return out;
}

std::vector<Mask> flats_by_definition(const RankProfile& profile, int cap) {
  require_size(profile.op(), cap, "flats_by_definition");
  const Mask ground = profile.ground();
  std::vector<Mask> out;
  for (Mask f = 0; f <= ground; ++f) {
    const Mask rest = ground & ~f;
    bool flat = true;
    for (Mask s = rest; s != 0 && flat; s = (s - 1) & rest) {
      if (profile.ork(f | s) == profile.ork(f)) flat = false;
    }
    if (flat) out.push_back(f);
  }
  return out;
}

Mask span(const ClosureOperator& op, Mask x) {
  const int o = outer_rank(op, x).value;
  Mask out = x;
  for (Mask rest = op.ground() & ~x; rest != 0; rest &= rest - 1) {
    const Mask v = rest & (~rest + 1);
    if (outer_rank(op, x | v).value == o) out |= v;
  }
  return out;
}

Mask upper_span(const ClosureOperator& op, Mask x) {
  const int u = lower_upper_rank(op, x).urk;
  Mask out = x;
  for (Mask rest = op.ground() & ~x; rest != 0; rest &= rest - 1) {
    const Mask v = rest & (~rest + 1);
    if (lower_upper_rank(op, x | v).urk == u) out |= v;
  }
  return out;
}

std::optional<ExchangeWitness> exchange_counterexample(const ClosureOperator& op) {
  require_size(op, kMaxTableSize, "exchange_counterexample");
  const int n = op.size();
  const Mask ground = op.ground();
  for (Mask x = 0; x <= ground; ++x) {
    const Mask cx = op(x);
    for (int u = 1; u <= n; ++u) {
      if (has_vertex(x, u)) continue;
      const Mask gained = op(x | vertex_bit(u)) & ~cx;
      for (Mask rest = gained & ~vertex_bit(u); rest != 0; rest &= rest - 1) {
        const int v = std::countr_zero(rest) + 1;
        if (!has_vertex(op(x | vertex_bit(v)), u)) return ExchangeWitness{x, u, v};
      }
    }
  }
  return std::nullopt;
}

MatroidReport matroid_check(const RankProfile& profile) {
  const ClosureOperator& op = profile.op();
  const Mask ground = profile.ground();
  MatroidReport report;
  report.exchange_witness = exchange_counterexample(op);
  report.exchange = !report.exchange_witness.has_value();

  std::vector<bool> span_image(subset_count(op.size()), false);
  std::vector<bool> uspan_image(subset_count(op.size()), false);
  for (Mask x = 0; x <= ground; ++x) {
    const Mask s = profile.span(x);
    const Mask u = profile.upper_span(x);
    span_image[s] = true;
    uspan_image[u] = true;
    if (report.closed_eq_span && op(x) != s) {
      report.closed_eq_span = false;
      report.closed_eq_span_witness = x;
    }
    if (report.upper_closed_eq_uspan && op(x) != u) {
      report.upper_closed_eq_uspan = false;
      report.upper_closed_eq_uspan_witness = x;
    }
  }
  for (Mask c = 0; c <= ground; ++c) {
    if (op(c) != c) continue;
    if (report.closed_are_spans && !span_image[c]) {
      report.closed_are_spans = false;
      report.closed_are_spans_witness = c;
    }
    if (report.upper_closed_are_uspans && !uspan_image[c]) {
      report.upper_closed_are_uspans = false;
      report.upper_closed_are_uspans_witness = c;
    }
  }
  return report;
}

ComplementedStatus complemented_status(const RankProfile& profile, Mask x) {
  const ClosureOperator& op = profile.op();
  check_subset(op, x);
  const Mask ground = profile.ground();
  const int n = profile.size();
  const int r = profile.rank();
  const int o = profile.ork(x);
  const int i = profile.irk(x);
  const int u = profile.urk(x);
  ComplementedStatus s;
  s.outer = o == u;
  s.inner = i == u;
  s.inner_via_outer = s.outer && i == o;

  const Mask rest = ground & ~x;
  for (Mask z = rest;; z = (z - 1) & rest) {
    if (o + profile.ork(z) == r && op(x | z) == ground) {
      s.outer_has_complement = true;
      break;
    }
    if (z == 0) break;
  }

  s.outer_bases_extend = true;
  for_each_k_subset(n, o, [&](Mask b) {
    if (is_subset(x, op(b)) && profile.spanning_extension(b) != r) s.outer_bases_extend = false;
    return s.outer_bases_extend;
  });
  const Mask cx = op(x);
  s.inner_bases_extend = true;
  for_each_k_subset(n, i, [&](Mask b) {
    if (op(b) == cx && profile.spanning_extension(b) != r) s.inner_bases_extend = false;
    return s.inner_bases_extend;
  });
  return s;
}

bool is_outer_complemented(const RankProfile& profile) {
  for (Mask x = 0; x <= profile.ground(); ++x) {
    if (profile.ork(x) != profile.urk(x)) return false;
  }
  return true;
}

std::optional<std::pair<Mask, Mask>> ork_submodularity_violation(const RankProfile& profile,
                                                                 int cap) {
  if (profile.size() > cap) {
    throw SizeLimitError("ork submodularity sweep supports n <= " + std::to_string(cap));
  }
  for (Mask x = 0; x <= profile.ground(); ++x) {
    for (Mask y = x + 1; y <= profile.ground(); ++y) {
      if (profile.ork(x | y) + profile.ork(x & y) > profile.ork(x) + profile.ork(y)) {
        return std::pair{x, y};
      }
    }
  }
  return std::nullopt;
}

std::optional<Mask> unsolvability_obstruction(const RankProfile& profile) {
  auto outer = [&](Mask x) { return profile.ork(x) == profile.urk(x); };
  for (Mask x = 0; x <= profile.ground(); ++x) {
    if (!outer(x)) continue;
    const Mask s = profile.span(x);
    if (profile.ork(s) > profile.ork(x) && outer(s)) return x;
  }
  return std::nullopt;
}

const char* span_verdict_name(SpanVerdict verdict) {
  switch (verdict) {
    case SpanVerdict::kNotApplicable: return "not-applicable";
    case SpanVerdict::kUnsolvable: return "unsolvable";
    case SpanVerdict::kSolvableIffSpanSolvable: return "solvable-iff-span-solvable";
  }
  return "?";
}

SpanOperatorResult span_operator(const RankProfile& profile) {
  const Mask ground = profile.ground();
  std::vector<Mask> table(subset_count(profile.size()));
  for (Mask x = 0; x <= ground; ++x) table[x] = profile.span(x);
  SpanOperatorResult out;
  out.candidate = ClosureOperator(profile.size(), std::move(table),
                                  "span(" + profile.op().label() + ")");
  out.report = validate_closure(out.candidate);
  if (out.report.valid) {
    out.candidate_rank = rank_of(out.candidate);
    out.is_matroid = !exchange_counterexample(out.candidate).has_value();
  }
  out.outer_complemented = is_outer_complemented(profile);
  if (!out.outer_complemented) {
    out.verdict = SpanVerdict::kNotApplicable;
  } else if (out.is_matroid && out.candidate_rank == profile.rank()) {
    out.verdict = SpanVerdict::kSolvableIffSpanSolvable;
  } else {
    out.verdict = SpanVerdict::kUnsolvable;
  }
  return out;
}

}  // namespace closlab

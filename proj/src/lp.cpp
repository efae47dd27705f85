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


#include "closlab/lp.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "closlab/errors.hpp"

namespace closlab {
namespace {

using Num = ExactLP::Num;
using i128 = __int128;

constexpr int kArtificial = std::numeric_limits<int>::max();
constexpr std::int64_t kSmall = std::int64_t{1} << 62;

bool fits(i128 t) { return t > -kSmall && t < kSmall; }

mpz_class to_mpz(i128 t) {
  const bool negative = t < 0;
  const unsigned __int128 u = negative ? -static_cast<unsigned __int128>(t)
                                       : static_cast<unsigned __int128>(t);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class out = (hi << 64) + mpz_class(static_cast<unsigned long>(u & ~std::uint64_t{0}));
  return negative ? mpz_class(-out) : out;
}

void assign(Num& x, i128 t) {
  if (fits(t)) {
    x.v = static_cast<std::int64_t>(t);
    x.big.reset();
  } else {
    x.set(to_mpz(t));
  }
}

bool small(const Num& x) { return !x.big; }

// x = (x * p - q * y) / d, the division being exact.
void combo(Num& x, const Num& p, const Num& q, const Num& y, const Num& d) {
  if (small(x) && small(p) && small(q) && small(y) && small(d)) {
    i128 t = static_cast<i128>(x.v) * p.v - static_cast<i128>(q.v) * y.v;
    if (d.v != 1) {
      if (t > -kSmall && t < kSmall) {
        t = static_cast<std::int64_t>(t) / d.v;
      } else {
        t /= d.v;
      }
    }
    assign(x, t);
    return;
  }
  mpz_class t = x.mpz() * p.mpz() - q.mpz() * y.mpz();
  mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), d.mpz().get_mpz_t());
  x.set(t);
}

// x = x * p / d.
void scale(Num& x, const Num& p, const Num& d) {
  static const Num zero;
  combo(x, p, zero, zero, d);
}

Num negated(const Num& x) {
  Num out;
  if (small(x)) {
    out.v = -x.v;
  } else {
    out.set(-*x.big);
  }
  return out;
}

// sign(a*b - c*d)
int cmp_prod(const Num& a, const Num& b, const Num& c, const Num& d) {
  if (small(a) && small(b) && small(c) && small(d)) {
    const i128 l = static_cast<i128>(a.v) * b.v, r = static_cast<i128>(c.v) * d.v;
    return (l > r) - (l < r);
  }
  return sgn(a.mpz() * b.mpz() - c.mpz() * d.mpz());
}

int cmp(const Num& a, const Num& b) {
  if (small(a) && small(b)) return (a.v > b.v) - (a.v < b.v);
  return sgn(a.mpz() - b.mpz());
}

BigRational ratio(const Num& num, const mpz_class& den) {
  mpq_class q(num.mpz(), den);
  q.canonicalize();
  return BigRational(q);
}

// Scales rationals by the lcm of their denominators.
std::vector<mpz_class> integral(const std::vector<BigRational>& values, mpz_class& factor) {
  factor = 1;
  std::vector<mpq_class> q;
  q.reserve(values.size());
  for (const BigRational& v : values) {
    q.push_back(v.to_mpq());
    mpz_lcm(factor.get_mpz_t(), factor.get_mpz_t(), q.back().get_den_mpz_t());
  }
  std::vector<mpz_class> out;
  out.reserve(q.size());
  for (const mpq_class& v : q) out.push_back(v.get_num() * (factor / v.get_den()));
  return out;
}

}  // namespace

mpz_class ExactLP::Num::mpz() const {
  return big ? *big : mpz_class(static_cast<long>(v));
}

void ExactLP::Num::set(const mpz_class& x) {
  if (x.fits_slong_p()) {
    const long s = x.get_si();
    if (s > -kSmall && s < kSmall) {
      v = s;
      big.reset();
      return;
    }
  }
  v = 0;
  big = std::make_unique<mpz_class>(x);
}

ExactLP::ExactLP(int num_vars) : n_(num_vars) {
  if (num_vars < 0) throw std::invalid_argument("ExactLP: negative variable count");
  nonbasic_.resize(static_cast<std::size_t>(num_vars));
  for (int j = 0; j < num_vars; ++j) nonbasic_[j] = j;
  cost_.resize(static_cast<std::size_t>(num_vars));
  d_.resize(static_cast<std::size_t>(num_vars));
}

int ExactLP::add_row(const Row& a, const BigRational& b) {
  std::vector<BigRational> dense(static_cast<std::size_t>(n_) + 1);
  for (const auto& [k, v] : a) {
    if (k < 0 || k >= n_) throw std::out_of_range("ExactLP::add_row: variable out of range");
    dense[k] += v;
  }
  dense[n_] = b;
  mpz_class factor;
  const std::vector<mpz_class> ints = integral(dense, factor);
  std::vector<Num> coeff(ints.size());
  for (std::size_t k = 0; k < ints.size(); ++k) coeff[k].set(ints[k]);

  // Substitute the basic originals by their rows, everything over det_.
  const std::size_t cols = nonbasic_.size();
  std::vector<Num> row(cols);
  Num rhs = coeff[n_];
  scale(rhs, det_, Num(1));
  for (std::size_t j = 0; j < cols; ++j) {
    if (nonbasic_[j] < n_) {
      row[j] = coeff[nonbasic_[j]];
      scale(row[j], det_, Num(1));
    }
  }
  const Num one(1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int k = basic_[i];
    if (k >= n_ || coeff[k].is_zero()) continue;
    combo(rhs, one, coeff[k], rhs_[i], one);
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rows_[i][j].is_zero()) combo(row[j], one, coeff[k], rows_[i][j], one);
    }
  }
  rows_.push_back(std::move(row));
  rhs_.push_back(std::move(rhs));
  basic_.push_back(n_ + next_row_id_);
  return next_row_id_++;
}

bool ExactLP::drop_row_if_slack(int id) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (basic_[i] != n_ + id) continue;
    if (rhs_[i].sign() <= 0) return false;
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
    basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(i));
    return true;
  }
  return false;
}

void ExactLP::set_objective(const std::vector<BigRational>& c) {
  if (static_cast<int>(c.size()) != n_) throw std::invalid_argument("objective size mismatch");
  const std::vector<mpz_class> ints = integral(c, cost_scale_);
  for (int k = 0; k < n_; ++k) cost_[k].set(ints[k]);
}

void ExactLP::load_objective() {
  const std::size_t cols = nonbasic_.size();
  const Num one(1);
  d_.assign(cols, Num());
  z0_ = Num();
  for (std::size_t j = 0; j < cols; ++j) {
    if (nonbasic_[j] < n_) {
      d_[j] = cost_[nonbasic_[j]];
      scale(d_[j], det_, one);
    }
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int k = basic_[i];
    if (k >= n_ || cost_[k].is_zero()) continue;
    combo(z0_, one, negated(cost_[k]), rhs_[i], one);
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rows_[i][j].is_zero()) combo(d_[j], one, cost_[k], rows_[i][j], one);
    }
  }
}

BigRational ExactLP::objective_value() const {
  return ratio(z0_, det_.mpz() * cost_scale_);
}

std::vector<BigRational> ExactLP::solution() const {
  std::vector<BigRational> x(static_cast<std::size_t>(n_));
  const mpz_class det = det_.mpz();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (basic_[i] < n_) x[basic_[i]] = ratio(rhs_[i], det);
  }
  return x;
}

bool ExactLP::primal_feasible() const {
  return std::none_of(rhs_.begin(), rhs_.end(), [](const Num& b) { return b.sign() < 0; });
}

bool ExactLP::dual_feasible() const {
  return std::none_of(d_.begin(), d_.end(), [](const Num& d) { return d.sign() > 0; });
}

void ExactLP::count_pivot() {
  ++pivots_;
  if (++solve_pivots_ > pivot_limit_) {
    throw BudgetExceeded("simplex pivot limit of " + std::to_string(pivot_limit_) + " reached");
  }
}

void ExactLP::pivot(int r, int c) {
  count_pivot();
  const std::size_t cols = nonbasic_.size();
  std::vector<Num>& prow = rows_[r];
  const int s = prow[c].sign();
  const Num ap = s < 0 ? negated(prow[c]) : prow[c];
  const Num& det = det_;
  const bool unit = cmp(ap, det) == 0;
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < cols; ++j) {
    if (static_cast<int>(j) != c && !prow[j].is_zero()) nz.push_back(j);
  }
  // Fraction-free update: entries become (old * |p| - s * old_ic * old_rj) / det.
  auto update = [&](std::vector<Num>* row, Num& rhs, const Num& old_c) {
    if (old_c.is_zero()) {
      if (unit) return;
      if (row) {
        for (std::size_t j = 0; j < cols; ++j) {
          if (!(*row)[j].is_zero()) scale((*row)[j], ap, det);
        }
      }
      scale(rhs, ap, det);
      return;
    }
    const Num q = s < 0 ? negated(old_c) : old_c;
    if (row) {
      if (unit) {
        for (std::size_t j : nz) combo((*row)[j], ap, q, prow[j], det);
      } else {
        for (std::size_t j = 0; j < cols; ++j) {
          if (static_cast<int>(j) != c) combo((*row)[j], ap, q, prow[j], det);
        }
      }
      (*row)[c] = negated(q);
    }
    combo(rhs, ap, q, rhs_[r], det);
  };
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (static_cast<int>(i) == r) continue;
    const Num old_c = rows_[i][c];
    update(&rows_[i], rhs_[i], old_c);
  }
  {
    // Objective row: z0 moves with the opposite sign of a dictionary row.
    const Num old_c = d_[c];
    if (!old_c.is_zero()) {
      const Num q = s < 0 ? negated(old_c) : old_c;
      if (unit) {
        for (std::size_t j : nz) combo(d_[j], ap, q, prow[j], det);
      } else {
        for (std::size_t j = 0; j < cols; ++j) {
          if (static_cast<int>(j) != c) combo(d_[j], ap, q, prow[j], det);
        }
      }
      d_[c] = negated(q);
      combo(z0_, ap, negated(q), rhs_[r], det);
    } else if (!unit) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (!d_[j].is_zero()) scale(d_[j], ap, det);
      }
      scale(z0_, ap, det);
    }
  }
  if (s < 0) {
    for (std::size_t j : nz) prow[j] = negated(prow[j]);
    rhs_[r] = negated(rhs_[r]);
  }
  prow[c] = s < 0 ? negated(det) : det;
  det_ = ap;
  std::swap(basic_[r], nonbasic_[c]);
}

int ExactLP::leaving_row(int col) const {
  // Minimum of (rhs_i + pi_i . eps) / a_ic, lexicographically, where pi_i are
  // the coefficients of the lex_order_ variables as perturbations.
  std::unordered_map<int, int> pos;
  std::vector<std::pair<int, int>> events;  // (lex position, column) of nonbasic lex variables
  bool prepared = false;
  auto prepare = [&] {
    if (prepared) return;
    prepared = true;
    for (std::size_t t = 0; t < lex_order_.size(); ++t) pos[lex_order_[t]] = static_cast<int>(t);
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
      const auto it = pos.find(nonbasic_[j]);
      if (it != pos.end()) events.push_back({it->second, static_cast<int>(j)});
    }
    std::sort(events.begin(), events.end());
  };
  auto own = [&](int i) {
    const auto it = pos.find(basic_[i]);
    return it == pos.end() ? std::numeric_limits<int>::max() : it->second;
  };
  // Is row i lexicographically below row k?
  auto lex_less = [&](int i, int k) {
    prepare();
    const int pi = own(i), pk = own(k);
    const Num& ai = rows_[i][col];
    const Num& ak = rows_[k][col];
    for (const auto& [p, j] : events) {
      if (p >= std::min(pi, pk)) break;
      const int c = cmp_prod(rows_[i][j], ak, rows_[k][j], ai);
      if (c != 0) return c < 0;
    }
    if (pi == pk) throw std::logic_error("ExactLP: lexicographic tie between rows");
    // The row whose own perturbation comes first is the larger one.
    return pk < pi;
  };
  int best = -1;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Num& t = rows_[i][col];
    if (t.sign() <= 0) continue;
    if (best < 0) {
      best = static_cast<int>(i);
      continue;
    }
    const int c = cmp_prod(rhs_[i], rows_[best][col], rhs_[best], t);
    if (c < 0 || (c == 0 && lex_less(static_cast<int>(i), best))) best = static_cast<int>(i);
  }
  return best;
}

int ExactLP::entering_col(int row) const {
  // Minimum of (d_j + rho_j . delta) / a_rj over a_rj < 0, lexicographically,
  // where rho_j are the reduced-cost perturbations of the lex_order_ costs.
  std::unordered_map<int, int> pos;
  std::vector<std::pair<int, int>> events;  // (lex position, row) of basic lex variables
  bool prepared = false;
  auto prepare = [&] {
    if (prepared) return;
    prepared = true;
    for (std::size_t t = 0; t < lex_order_.size(); ++t) pos[lex_order_[t]] = static_cast<int>(t);
    for (std::size_t i = 0; i < basic_.size(); ++i) {
      const auto it = pos.find(basic_[i]);
      if (it != pos.end()) events.push_back({it->second, static_cast<int>(i)});
    }
    std::sort(events.begin(), events.end());
  };
  auto own = [&](int j) {
    const auto it = pos.find(nonbasic_[j]);
    return it == pos.end() ? std::numeric_limits<int>::max() : it->second;
  };
  const std::vector<Num>& r = rows_[row];
  auto lex_less = [&](int j, int k) {
    prepare();
    const int pj = own(j), pk = own(k);
    for (const auto& [p, i] : events) {
      if (p >= std::min(pj, pk)) break;
      // rho_j = a_ij here; compare a_ij / a_rj with a_ik / a_rk.
      const int c = cmp_prod(rows_[i][j], r[k], rows_[i][k], r[j]);
      if (c != 0) return c < 0;
    }
    if (pj == pk) throw std::logic_error("ExactLP: lexicographic tie between columns");
    // The own perturbation is -det, so its ratio is positive: larger.
    return pk < pj;
  };
  int best = -1;
  for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
    if (r[j].sign() >= 0) continue;
    if (best < 0) {
      best = static_cast<int>(j);
      continue;
    }
    const int c = cmp_prod(d_[j], r[best], d_[best], r[j]);
    if (c < 0 || (c == 0 && lex_less(static_cast<int>(j), best))) best = static_cast<int>(j);
  }
  return best;
}

LPStatus ExactLP::primal() {
  lex_order_ = basic_;
  while (true) {
    int col = -1;
    for (std::size_t j = 0; j < d_.size(); ++j) {
      if (d_[j].sign() <= 0) continue;
      const int c = col < 0 ? 1 : cmp(d_[j], d_[col]);
      if (c > 0 || (c == 0 && nonbasic_[j] < nonbasic_[col])) col = static_cast<int>(j);
    }
    if (col < 0) return LPStatus::kOptimal;
    const int row = leaving_row(col);
    if (row < 0) return LPStatus::kUnbounded;
    pivot(row, col);
  }
}

LPStatus ExactLP::dual() {
  lex_order_ = nonbasic_;
  while (true) {
    int row = -1;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rhs_[i].sign() >= 0) continue;
      const int c = row < 0 ? -1 : cmp(rhs_[i], rhs_[row]);
      if (c < 0 || (c == 0 && basic_[i] < basic_[row])) row = static_cast<int>(i);
    }
    if (row < 0) return LPStatus::kOptimal;
    const int col = entering_col(row);
    if (col < 0) return LPStatus::kInfeasible;
    pivot(row, col);
  }
}

LPStatus ExactLP::phase_one() {
  // Auxiliary problem: maximize -x_a with x_a added to every current row.
  const int a = static_cast<int>(nonbasic_.size());
  const Num minus = negated(det_);
  for (auto& row : rows_) row.push_back(minus);
  nonbasic_.push_back(kArtificial);
  d_.assign(nonbasic_.size(), Num());
  d_[a] = minus;
  z0_ = Num();
  int row = -1;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int c = row < 0 ? -1 : cmp(rhs_[i], rhs_[row]);
    if (c < 0 || (c == 0 && basic_[i] < basic_[row])) row = static_cast<int>(i);
  }
  pivot(row, a);
  primal();
  const bool feasible = z0_.is_zero();
  // Drive x_a out of the basis, then drop its column.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (basic_[i] != kArtificial) continue;
    int col = -1;
    for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
      if (!rows_[i][j].is_zero()) {
        col = static_cast<int>(j);
        break;
      }
    }
    if (col < 0) throw std::logic_error("ExactLP: artificial variable stuck in the basis");
    pivot(static_cast<int>(i), col);
  }
  std::vector<bool> drop(nonbasic_.size());
  for (std::size_t j = 0; j < nonbasic_.size(); ++j) drop[j] = nonbasic_[j] == kArtificial;
  drop_columns(drop);
  load_objective();
  return feasible ? LPStatus::kOptimal : LPStatus::kInfeasible;
}

void ExactLP::drop_columns(const std::vector<bool>& drop) {
  auto compact = [&](auto& v) {
    std::size_t w = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!drop[j]) {
        if (w != j) v[w] = std::move(v[j]);
        ++w;
      }
    }
    v.resize(w);
  };
  for (auto& row : rows_) compact(row);
  compact(nonbasic_);
  compact(d_);
}

void ExactLP::restrict_to_optimal_face() {
  std::vector<bool> drop(nonbasic_.size());
  for (std::size_t j = 0; j < d_.size(); ++j) drop[j] = d_[j].sign() < 0;
  drop_columns(drop);
}

bool ExactLP::fix_if_nonbasic(int var) {
  std::vector<bool> drop(nonbasic_.size());
  bool found = false;
  for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
    if (nonbasic_[j] == var) drop[j] = found = true;
  }
  if (found) drop_columns(drop);
  return found;
}

LPStatus ExactLP::solve() {
  solve_pivots_ = 0;
  load_objective();
  if (!primal_feasible()) {
    if (dual_feasible()) {
      if (dual() == LPStatus::kInfeasible) return LPStatus::kInfeasible;
    } else if (phase_one() == LPStatus::kInfeasible) {
      return LPStatus::kInfeasible;
    }
  }
  return primal();
}

}  // namespace closlab

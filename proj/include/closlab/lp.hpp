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


#ifndef CLOSLAB_LP_HPP_
#define CLOSLAB_LP_HPP_

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "closlab/rational.hpp"

namespace closlab {

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

/// Exact simplex over the rationals: maximize c.x subject to rows a.x <= b
/// and x >= 0.
///
/// Dictionary form kept integral: every entry is an integer numerator over
/// one common denominator (the basis determinant), updated by fraction-free
/// pivoting with exact division. Numerators stay in machine words while they
/// fit and move to GMP otherwise. Entering variable by largest reduced cost,
/// leaving variable by the lexicographic ratio test, which rules out cycling.
/// Rows added after a solve are absorbed by dual simplex with the dual
/// lexicographic rule. No tolerances.
class ExactLP {
 public:
  using Row = std::vector<std::pair<int, BigRational>>;  // sparse (variable, coefficient)

  explicit ExactLP(int num_vars);

  int num_vars() const { return n_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_rows_added() const { return next_row_id_; }
  std::uint64_t pivots() const { return pivots_; }

  // a.x <= b; returns a stable row id. Valid at any time, also after solve().
  int add_row(const Row& a, const BigRational& b);
  // Removes the row if its slack is basic and strictly positive, which keeps
  // the current basis feasible and optimal.
  bool drop_row_if_slack(int id);
  void set_objective(const std::vector<BigRational>& c);

  LPStatus solve();

  // After kOptimal.
  BigRational objective_value() const;
  std::vector<BigRational> solution() const;

  // After kOptimal: fixes at zero every nonbasic variable with a nonzero
  // reduced cost, so later solves stay on the current optimal face. The
  // affected columns are dropped for good.
  void restrict_to_optimal_face();
  // Fixes an original variable at zero if it is currently nonbasic; returns
  // whether it did.
  bool fix_if_nonbasic(int var);

  // Gives up with BudgetExceeded after this many pivots in one solve().
  void set_pivot_limit(std::uint64_t limit) { pivot_limit_ = limit; }

  // Integer with an inline fast path and a GMP fallback.
  struct Num {
    std::int64_t v = 0;
    std::unique_ptr<mpz_class> big;

    Num() = default;
    Num(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)
    Num(const Num& o) : v(o.v), big(o.big ? std::make_unique<mpz_class>(*o.big) : nullptr) {}
    Num(Num&&) noexcept = default;
    Num& operator=(const Num& o) {
      if (this != &o) {
        v = o.v;
        big = o.big ? std::make_unique<mpz_class>(*o.big) : nullptr;
      }
      return *this;
    }
    Num& operator=(Num&&) noexcept = default;

    bool is_zero() const { return !big && v == 0; }
    int sign() const { return big ? sgn(*big) : (v > 0) - (v < 0); }
    mpz_class mpz() const;
    void set(const mpz_class& x);
  };

 private:
  bool primal_feasible() const;
  bool dual_feasible() const;
  void pivot(int row, int col);
  LPStatus primal();
  LPStatus dual();
  LPStatus phase_one();
  void count_pivot();
  void load_objective();
  void drop_columns(const std::vector<bool>& drop);
  int leaving_row(int col) const;
  int entering_col(int row) const;

  int n_;
  // Row i: basic_[i] = (rhs_[i] - sum_j rows_[i][j] * nonbasic_[j]) / det_.
  std::vector<std::vector<Num>> rows_;
  std::vector<Num> rhs_;
  std::vector<int> basic_;     // variable ids; originals are 0..n-1, slack of row id k is n+k
  std::vector<int> nonbasic_;  // one per column
  Num det_ = 1;                // common denominator, positive
  std::vector<Num> cost_;      // objective over originals, scaled to integers
  mpz_class cost_scale_ = 1;
  // z = (z0_ + sum_j d_[j] * nonbasic_[j]) / (det_ * cost_scale_).
  std::vector<Num> d_;
  Num z0_;
  // Variables whose perturbations order the lexicographic ratio tests.
  std::vector<int> lex_order_;
  int next_row_id_ = 0;
  std::uint64_t pivots_ = 0;
  std::uint64_t solve_pivots_ = 0;
  std::uint64_t pivot_limit_ = 5'000'000;
};

}  // namespace closlab

#endif  // CLOSLAB_LP_HPP_

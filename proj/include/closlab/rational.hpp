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

#ifndef CLOSLAB_RATIONAL_HPP_
#define CLOSLAB_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace closlab {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit comfortably in 62 bits are
/// kept inline and combined with overflow-checked machine arithmetic; any
/// operation that would overflow is redone in GMP and the result is demoted
/// back to the inline form whenever it fits again. Simplex tableaus over
/// 0/±1 constraint matrices almost never leave the inline form.
class BigRational {
 public:
  BigRational() = default;
  BigRational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  BigRational(std::int64_t num, std::int64_t den);
  explicit BigRational(const mpq_class& value);

  BigRational(const BigRational& other);
  BigRational(BigRational&&) noexcept = default;
  BigRational& operator=(const BigRational& other);
  BigRational& operator=(BigRational&&) noexcept = default;
  ~BigRational() = default;

  // "a/b", "a", "-a/b"; no decimals.
  static BigRational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  int sign() const;
  bool is_integer() const;
  bool fits_int64() const { return !big_; }

  // Valid only when fits_int64().
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  std::string num_str() const;
  std::string den_str() const;
  std::string str() const;
  double to_double() const;
  mpq_class to_mpq() const;

  BigRational operator-() const;
  BigRational& operator+=(const BigRational& rhs);
  BigRational& operator-=(const BigRational& rhs);
  BigRational& operator*=(const BigRational& rhs);
  BigRational& operator/=(const BigRational& rhs);
  // *this -= a * b without temporaries.
  BigRational& sub_mul(const BigRational& a, const BigRational& b);

  friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
  friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
  friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
  friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }

  friend bool operator==(const BigRational& a, const BigRational& b);
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b);

 private:
  void assign_big(mpq_class value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;  // set only when the value does not fit inline
};

std::ostream& operator<<(std::ostream& os, const BigRational& value);

}  // namespace closlab

#endif  // CLOSLAB_RATIONAL_HPP_

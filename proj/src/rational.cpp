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

#include "closlab/rational.hpp"

#include <cctype>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "closlab/errors.hpp"

namespace closlab {
namespace {

constexpr std::int64_t kInlineLimit = std::int64_t{1} << 62;

bool inline_ok(std::int64_t v) { return v > -kInlineLimit && v < kInlineLimit; }

mpq_class to_mpq_small(std::int64_t num, std::int64_t den) {
  mpq_class q;
  mpz_set_si(q.get_num_mpz_t(), num);
  mpz_set_si(q.get_den_mpz_t(), den);
  return q;
}

bool mpz_fits_inline(const mpz_class& z) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) return false;
  return inline_ok(mpz_get_si(z.get_mpz_t()));
}

}  // namespace

BigRational::BigRational(std::int64_t value) {
  if (inline_ok(value)) {
    num_ = value;
  } else {
    assign_big(to_mpq_small(value, 1));
  }
}

BigRational::BigRational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  mpq_class q = to_mpq_small(num, den);
  q.canonicalize();
  assign_big(std::move(q));
}

BigRational::BigRational(const mpq_class& value) {
  mpq_class q = value;
  q.canonicalize();
  assign_big(std::move(q));
}

BigRational::BigRational(const BigRational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

BigRational& BigRational::operator=(const BigRational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

void BigRational::assign_big(mpq_class value) {
  if (mpz_fits_inline(value.get_num()) && mpz_fits_inline(value.get_den())) {
    num_ = mpz_get_si(value.get_num_mpz_t());
    den_ = mpz_get_si(value.get_den_mpz_t());
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(value));
  }
}

BigRational BigRational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  text = trim(text);
  const auto slash = text.find('/');
  std::string_view num = trim(text.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : trim(text.substr(slash + 1));
  if (!valid_int(num) || !valid_int(den) || den.front() == '-') {
    throw ParseError("expected a rational \"a/b\", got \"" + std::string(text) + "\"");
  }
  if (num.front() == '+') num.remove_prefix(1);
  if (den.front() == '+') den.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  return BigRational(mpq_class(n, d));
}

int BigRational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool BigRational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

std::string BigRational::num_str() const {
  return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string BigRational::den_str() const {
  return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

std::string BigRational::str() const {
  return is_integer() ? num_str() : num_str() + "/" + den_str();
}

double BigRational::to_double() const {
  return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_);
}

mpq_class BigRational::to_mpq() const { return big_ ? *big_ : to_mpq_small(num_, den_); }

BigRational BigRational::operator-() const {
  BigRational out(*this);
  if (out.big_) {
    *out.big_ = -*out.big_;
  } else {
    out.num_ = -out.num_;
  }
  return out;
}

namespace {

// Inline a/b + c/d for reduced inputs; false on overflow.
bool add_inline(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t& num,
                std::int64_t& den) {
  if (b == 1 && d == 1) {
    num = a + c;  // both below 2^62
    den = 1;
    return inline_ok(num);
  }
  const std::int64_t g = std::gcd(b, d);
  const std::int64_t lhs_scale = d / g;
  const std::int64_t rhs_scale = b / g;
  std::int64_t x, y;
  if (__builtin_mul_overflow(a, lhs_scale, &x) || __builtin_mul_overflow(c, rhs_scale, &y) ||
      __builtin_add_overflow(x, y, &num) || __builtin_mul_overflow(b, lhs_scale, &den)) {
    return false;
  }
  const std::int64_t h = std::gcd(num, g);
  num /= h;
  den /= h;
  return inline_ok(num) && inline_ok(den);
}

bool mul_inline(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t& num,
                std::int64_t& den) {
  const std::int64_t g1 = std::gcd(a, d);
  const std::int64_t g2 = std::gcd(c, b);
  return !__builtin_mul_overflow(a / g1, c / g2, &num) &&
         !__builtin_mul_overflow(b / g2, d / g1, &den) && inline_ok(num) && inline_ok(den);
}

}  // namespace

BigRational& BigRational::operator+=(const BigRational& rhs) {
  if (!big_ && !rhs.big_) {
    if (rhs.num_ == 0) return *this;
    if (num_ == 0) return *this = rhs;
    std::int64_t num, den;
    if (add_inline(num_, den_, rhs.num_, rhs.den_, num, den)) {
      num_ = num;
      den_ = den;
      return *this;
    }
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

BigRational& BigRational::operator-=(const BigRational& rhs) {
  if (!big_ && !rhs.big_) {
    if (rhs.num_ == 0) return *this;
    std::int64_t num, den;
    if (add_inline(num_, den_, -rhs.num_, rhs.den_, num, den)) {
      num_ = num;
      den_ = den;
      return *this;
    }
  }
  assign_big(to_mpq() - rhs.to_mpq());
  return *this;
}

BigRational& BigRational::operator*=(const BigRational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0) return *this;
    if (rhs.num_ == 0) return *this = BigRational();
    std::int64_t num, den;
    if (mul_inline(num_, den_, rhs.num_, rhs.den_, num, den)) {
      num_ = num;
      den_ = den;
      return *this;
    }
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

BigRational& BigRational::sub_mul(const BigRational& a, const BigRational& b) {
  if (!big_ && !a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return *this;
    std::int64_t pn, pd, num, den;
    if (mul_inline(a.num_, a.den_, b.num_, b.den_, pn, pd) &&
        add_inline(num_, den_, -pn, pd, num, den)) {
      num_ = num;
      den_ = den;
      return *this;
    }
  }
  assign_big(to_mpq() - a.to_mpq() * b.to_mpq());
  return *this;
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("BigRational: division by zero");
  if (!rhs.big_) {
    // Multiply by the inline reciprocal.
    BigRational inv;
    inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
    inv.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
    return *this *= inv;
  }
  assign_big(to_mpq() / rhs.to_mpq());
  return *this;
}

bool operator==(const BigRational& a, const BigRational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical forms differ in representation only when values differ
}

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const BigRational& value) { return os << value.str(); }

}  // namespace closlab

// Copyright 2026 The Ultraball Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ultraball/error.hpp"

namespace ultraball {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always held in lowest terms with a positive
/// denominator.
///
/// Text form: an optional '-' followed by either an integer ("12"), a
/// terminating decimal ("1.25") or a fraction ("5/4"). `to_string` emits the
/// fraction form, or a bare integer when the denominator is 1.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT: implicit by intent
  Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) {
      throw Error(ErrorKind::InvalidInput, "zero denominator");
    }
    // boost::rational rejects negative denominators for unbounded integers.
    if (denominator < 0) {
      value_ = Impl(BigInt(-numerator), BigInt(-denominator));
    } else {
      value_ = Impl(numerator, denominator);
    }
  }

  static Rational parse(std::string_view text) {
    auto fail = [&]() -> Rational {
      throw Error(ErrorKind::InvalidInput,
                  "not an exact rational: \"" + std::string(text) + "\"");
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
      negative = true;
      body.remove_prefix(1);
    }
    auto digits_only = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s) {
        if (c < '0' || c > '9') return false;
      }
      return true;
    };
    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
      auto num = body.substr(0, slash);
      auto den = body.substr(slash + 1);
      if (!digits_only(num) || !digits_only(den)) return fail();
      BigInt d{std::string(den)};
      if (d == 0) return fail();
      result = Rational(BigInt(std::string(num)), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
      auto whole = body.substr(0, dot);
      auto frac = body.substr(dot + 1);
      if (!digits_only(whole) || !digits_only(frac)) return fail();
      BigInt scale = boost::multiprecision::pow(BigInt(10),
                                                static_cast<unsigned>(frac.size()));
      BigInt num = BigInt(std::string(whole)) * scale + BigInt(std::string(frac));
      result = Rational(num, scale);
    } else {
      if (!digits_only(body)) return fail();
      result = Rational(BigInt(std::string(body)), BigInt(1));
    }
    return negative ? -result : result;
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  int sign() const { return value_.sign(); }
  bool is_zero() const { return value_.is_zero(); }
  bool is_positive() const { return sign() > 0; }

  std::string to_string() const {
    BigInt den = denominator();
    if (den == 1) return numerator().str();
    return numerator().str() + "/" + den.str();
  }

  Rational operator-() const { return Rational(Impl(-value_)); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(Impl(a.value_ + b.value_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(Impl(a.value_ - b.value_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(Impl(a.value_ * b.value_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidInput, "division by zero");
    return Rational(Impl(a.value_ / b.value_));
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = a.value_.compare(b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

  std::size_t hash() const {
    return std::hash<std::string>{}(to_string());
  }

 private:
  using Impl = boost::multiprecision::cpp_rational;
  explicit Rational(Impl v) : value_(std::move(v)) {}

  Impl value_;
};

inline const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}
inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}

}  // namespace ultraball

template <>
struct std::hash<ultraball::Rational> {
  std::size_t operator()(const ultraball::Rational& r) const { return r.hash(); }
};

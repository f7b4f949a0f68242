// Copyright 2026 The idspower Authors
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

// Exact rational arithmetic helpers shared by every module.

#pragma once

#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace idspower {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt Numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt Denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline BigInt Gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}
inline BigInt Lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

inline Rational MakeRational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

/// Smallest integer not less than `r`.
inline BigInt Ceil(const Rational& r) {
  BigInt num = Numerator(r);
  BigInt den = Denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (q * den != num && num > 0) q += 1;
  return q;
}

/// Largest integer not greater than `r`.
inline BigInt Floor(const Rational& r) {
  BigInt num = Numerator(r);
  BigInt den = Denominator(r);
  BigInt q = num / den;
  if (q * den != num && num < 0) q -= 1;
  return q;
}

inline double ToDouble(const Rational& r) { return r.convert_to<double>(); }

/// Exact binary value of a finite double.
inline Rational FromDouble(double d) { return Rational(d); }

/// Parses "3/5", "-2", "0.6", "1.5e-3" or "2E2" into an exact rational.
/// Throws std::invalid_argument on anything else.
inline Rational ParseRational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" +
                                std::string(text) + "'");
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
      s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
      s.remove_suffix(1);
    }
    return s;
  };
  std::string_view s = trim(text);
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = ParseRational(s.substr(0, slash));
    Rational den = ParseRational(s.substr(slash + 1));
    if (Denominator(num) != 1 || Denominator(den) != 1 || den == 0) {
      return fail();
    }
    return num / den;
  }

  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  BigInt digits = 0;
  int frac_digits = 0;
  bool any_digit = false;
  bool in_fraction = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (in_fraction) ++frac_digits;
    } else if (c == '.' && !in_fraction) {
      in_fraction = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') return fail();
    ++pos;
    bool exp_negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      exp_negative = s[pos] == '-';
      ++pos;
    }
    if (pos >= s.size()) return fail();
    for (; pos < s.size(); ++pos) {
      char c = s[pos];
      if (c < '0' || c > '9') return fail();
      exponent = exponent * 10 + (c - '0');
      if (exponent > 4000) return fail();
    }
    if (exp_negative) exponent = -exponent;
  }
  exponent -= frac_digits;
  Rational value(digits);
  BigInt scale = boost::multiprecision::pow(BigInt(10),
                                            static_cast<unsigned>(
                                                exponent < 0 ? -exponent
                                                             : exponent));
  if (exponent < 0) {
    value /= scale;
  } else {
    value *= scale;
  }
  return negative ? -value : value;
}

/// "2/3", "-1/2", "0", "4".
inline std::string FormatRational(const Rational& r) {
  std::ostringstream os;
  os << Numerator(r);
  if (Denominator(r) != 1) os << '/' << Denominator(r);
  return os.str();
}

/// Fixed-point rendering with `places` digits after the point, rounded half
/// away from zero. Computed exactly so output never depends on libm.
inline std::string FormatDecimal(const Rational& r, int places) {
  if (places < 0) places = 0;
  BigInt scale = boost::multiprecision::pow(BigInt(10),
                                            static_cast<unsigned>(places));
  Rational scaled = r * scale;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  BigInt rounded = Floor(scaled + Rational(1, 2));
  BigInt int_part = rounded / scale;
  BigInt frac_part = rounded % scale;
  std::ostringstream os;
  if (negative && rounded != 0) os << '-';
  os << int_part;
  if (places > 0) {
    std::string frac = frac_part.str();
    os << '.' << std::string(places - frac.size(), '0') << frac;
  }
  return os.str();
}

/// n! as an exact integer.
inline BigInt Factorial(unsigned n) {
  BigInt out = 1;
  for (unsigned k = 2; k <= n; ++k) out *= k;
  return out;
}

/// Binomial coefficient C(n, k) as an exact integer.
inline BigInt Binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (unsigned i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

/// Converts to int64 when the integer value fits.
inline std::optional<std::int64_t> ToInt64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace idspower

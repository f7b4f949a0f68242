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


#include "idspower/rational.hpp"

#include <random>

#include "gtest/gtest.h"

namespace idspower {
namespace {

TEST(RationalTest, ParsesFractionsAndDecimals) {
  EXPECT_EQ(ParseRational("3/5"), Rational(3, 5));
  EXPECT_EQ(ParseRational("0.6"), Rational(3, 5));
  EXPECT_EQ(ParseRational("-2"), Rational(-2));
  EXPECT_EQ(ParseRational("1.5e-3"), Rational(3, 2000));
  EXPECT_EQ(ParseRational("2E2"), Rational(200));
  EXPECT_EQ(ParseRational(" 10/4 "), Rational(5, 2));
}

TEST(RationalTest, RejectsGarbage) {
  for (const char* bad : {"", "abc", "1/0", "1/2/3", "1.2.3", "0.5/2", "1e",
                          "--1"}) {
    EXPECT_THROW(ParseRational(bad), std::invalid_argument) << bad;
  }
}

TEST(RationalTest, Formats) {
  EXPECT_EQ(FormatRational(Rational(2, 3)), "2/3");
  EXPECT_EQ(FormatRational(Rational(4)), "4");
  EXPECT_EQ(FormatRational(Rational(0)), "0");
  EXPECT_EQ(FormatDecimal(Rational(2, 3), 4), "0.6667");
  EXPECT_EQ(FormatDecimal(Rational(-1, 8), 2), "-0.13");
  EXPECT_EQ(FormatDecimal(Rational(5, 8), 3), "0.625");
  EXPECT_EQ(FormatDecimal(Rational(7, 2), 0), "4");
}

TEST(RationalTest, CeilFloor) {
  EXPECT_EQ(Ceil(Rational(12, 5)), 3);
  EXPECT_EQ(Ceil(Rational(3)), 3);
  EXPECT_EQ(Ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(Floor(Rational(-7, 2)), -4);
  EXPECT_EQ(Floor(Rational(7, 2)), 3);
}

TEST(RationalTest, FormatParseRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-100000, 100000);
  std::uniform_int_distribution<std::int64_t> den(1, 100000);
  for (int k = 0; k < 500; ++k) {
    Rational r(num(rng), den(rng));
    EXPECT_EQ(ParseRational(FormatRational(r)), r);
  }
}

TEST(RationalTest, Binomial) {
  EXPECT_EQ(Binomial(5, 2), 10);
  EXPECT_EQ(Binomial(24, 12), 2704156);
  EXPECT_EQ(Binomial(3, 4), 0);
  EXPECT_EQ(Factorial(10), 3628800);
}

}  // namespace
}  // namespace idspower

// Copyright 2026 The qsep Authors
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

#include "qsep/exact.hpp"

#include "gtest/gtest.h"

using namespace qsep;

TEST(exact, parse_rational_forms) {
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("-1/2"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("+4/8"), Rational(1, 2));
    EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(parse_rational("-.5"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("1.5e-3"), Rational(3, 2000));
    EXPECT_EQ(parse_rational("2E2"), Rational(200));
    EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
    EXPECT_EQ(parse_rational("010"), Rational(10));
    EXPECT_EQ(parse_rational("007/010"), Rational(7, 10));
    EXPECT_EQ(parse_rational("000"), Rational(0));
}

TEST(exact, parse_rational_rejects_garbage) {
    for (const char *bad : {"", "-", "1/0", "a", "1/2/3", "1.2.3", "1/-2", "e5", "1e", "0x10", "."}) {
        EXPECT_THROW(parse_rational(bad), ParseError) << bad;
    }
}

TEST(exact, complex_arithmetic) {
    ExactComplex i(0, 1);
    EXPECT_EQ(i * i, ExactComplex(-1));
    ExactComplex a(Rational(1, 2), Rational(3));
    ExactComplex b(Rational(-2), Rational(1, 3));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(a / a, ExactComplex(1));
    EXPECT_EQ(a - a, ExactComplex());
    EXPECT_EQ(a.conj().im(), Rational(-3));
    EXPECT_EQ(a.norm(), Rational(37, 4));
    EXPECT_THROW(a / ExactComplex(), std::domain_error);
}

TEST(exact, formatting) {
    EXPECT_EQ(to_string(Rational(-3, 6)), "-1/2");
    EXPECT_EQ(to_string(Rational(4)), "4");
    EXPECT_EQ(to_string(ExactComplex(Rational(1, 2))), "1/2");
    EXPECT_EQ(to_string(ExactComplex(Rational(0), Rational(2))), "2i");
    EXPECT_EQ(to_string(ExactComplex(Rational(1), Rational(-1, 2))), "(1-1/2i)");
}

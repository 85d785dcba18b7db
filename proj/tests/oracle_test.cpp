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

#include "qsep/oracle.hpp"

#include "gtest/gtest.h"
#include "qsep/separability.hpp"
#include "qsep/zoo.hpp"
#include "test_support.hpp"

using namespace qsep;
using qsep::testing::state;

TEST(oracle, dense_vector_examples) {
    auto bell = dense_vector(zoo::bell());
    EXPECT_EQ(bell.amplitudes, (std::vector<ExactComplex>{1, 0, 0, 1}));
    EXPECT_EQ(dense_vector(state(2, {{"01", 1}})).amplitudes, (std::vector<ExactComplex>{0, 1, 0, 0}));
    auto ex = dense_vector(qsep::testing::worked_example());
    ASSERT_EQ(ex.amplitudes.size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) {
        const bool hit = i == 0 || i == 2 || i == 5 || i == 7;
        EXPECT_EQ(ex.amplitudes[i], hit ? ExactComplex(Rational(1, 2)) : ExactComplex());
    }
    EXPECT_THROW(dense_vector(zoo::ghz(15)), PreconditionError);
}

TEST(oracle, schmidt_rank_examples) {
    EXPECT_EQ(schmidt_rank(dense_vector(zoo::ghz(3)), QubitSubset::of(3, {1})), 2u);
    EXPECT_EQ(schmidt_rank(dense_vector(qsep::testing::worked_example()), QubitSubset::of(3, {2})), 1u);
    // The {1,3} reshape of C4 carries the 2x2 block [[1/2, 1/2], [1/2, -1/2]].
    auto block = qsep::testing::naive_reshape(zoo::c4(), {1, 3});
    EXPECT_EQ(qsep::testing::naive_rank(block), 2u);
    EXPECT_EQ(schmidt_rank(dense_vector(zoo::c4()), QubitSubset::of(4, {1, 3})), 2u);
    EXPECT_THROW(schmidt_rank(dense_vector(zoo::c4()), QubitSubset(0, 4)), PreconditionError);
    EXPECT_THROW(schmidt_rank(dense_vector(zoo::c4()), QubitSubset(0b1111, 4)), PreconditionError);
}

TEST(oracle, bareiss_rank_matches_naive_elimination) {
    zoo::Rng rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = static_cast<unsigned>(2 + rng.below(6));
        const std::size_t m = 1 + rng.below(std::min<std::uint64_t>(std::uint64_t{1} << n, 24));
        PureState s = zoo::random_sparse(n, m, rng.below(1u << 30));
        if (trial % 3 == 0) {
            s = scaled(s, ExactComplex(Rational(1, 7), Rational(2, 3)));
        }
        DenseState d = dense_vector(s);
        for (std::uint64_t mask = 1; mask < full_mask(n); ++mask) {
            QubitSubset sub(mask, n);
            const std::size_t expected = qsep::testing::naive_rank(qsep::testing::naive_reshape(s, sub.indices()));
            ASSERT_EQ(schmidt_rank(d, sub), expected);
            EXPECT_EQ(schmidt_rank(d, sub, RankMode::kFloat), expected);
        }
    }
}

TEST(oracle, schmidt_rank_symmetric_and_product_cut) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto sample = zoo::random_product_sample({2, 3}, seed);
        DenseState d = dense_vector(sample.state);
        EXPECT_EQ(schmidt_rank(d, sample.blocks[0]), 1u);
        EXPECT_EQ(schmidt_rank(d, sample.blocks[1]), 1u);
        for (std::uint64_t mask = 1; mask < 31; ++mask) {
            QubitSubset sub(mask, 5);
            EXPECT_EQ(schmidt_rank(d, sub), schmidt_rank(d, sub.complement()));
        }
    }
}

TEST(oracle, classify_examples) {
    EXPECT_EQ(oracle_classify(dense_vector(zoo::c4())), Family::kFamily4);
    EXPECT_EQ(oracle_classify(dense_vector(zoo::ghz(4))), Family::kFamily3);
    EXPECT_EQ(oracle_classify(dense_vector(tensor_product(state(1, {{"0", 1}}), zoo::bell(), QubitSubset::of(3, {1})))),
              Family::kFamily1);
    EXPECT_EQ(oracle_classify(dense_vector(qsep::testing::worked_example())), Family::kFamily2);
    EXPECT_EQ(oracle_classify(dense_vector(zoo::c2())), Family::kFamily4);
    EXPECT_EQ(oracle_classify(dense_vector(zoo::w(5))), Family::kFamily3);
}

TEST(oracle, agrees_with_classify_on_small_states) {
    zoo::Rng rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        const auto n = static_cast<unsigned>(2 + rng.below(6));
        PureState s = trial % 2 ? zoo::random_sparse(n, 2 + rng.below(std::min<std::uint64_t>((1u << n) - 1, 10)), rng.below(1u << 30))
                                : zoo::random_product({1 + static_cast<unsigned>(rng.below(3)), 1 + static_cast<unsigned>(rng.below(3))}, rng.below(1u << 30));
        EXPECT_EQ(oracle_classify(dense_vector(s)), classify(s).family);
    }
}

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

#include "qsep/separability.hpp"

#include <random>

#include "gtest/gtest.h"
#include "qsep/oracle.hpp"
#include "qsep/state_io.hpp"
#include "qsep/zoo.hpp"
#include "test_support.hpp"

using namespace qsep;
using qsep::testing::state;

namespace {

const ExactComplex kHalf{Rational(1, 2)};

PureState c4_all_plus() {
    return state(4, {{"0000", kHalf}, {"0101", kHalf}, {"1010", kHalf}, {"1111", kHalf}});
}

void expect_witness_reproduces(const PureState &s, const SplitWitness &w) {
    EXPECT_EQ(tensor_product(w.left, w.right, w.subset), s);
    EXPECT_EQ(w.left.coeff(0), ExactComplex(1));
}

}  // namespace

TEST(separability, split_once_worked_example) {
    PureState s = qsep::testing::worked_example();
    auto w = split_once(s);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->subset, QubitSubset::of(3, {2}));
    EXPECT_EQ(w->left, state(1, {{"0", 1}, {"1", 1}}));
    EXPECT_EQ(w->right, state(2, {{"00", kHalf}, {"11", kHalf}}));
    expect_witness_reproduces(s, *w);
}

TEST(separability, split_once_entangled_examples) {
    EXPECT_FALSE(split_once(zoo::ghz(3)));
    EXPECT_FALSE(split_once(zoo::c4()));
    EXPECT_THROW(split_once(state(2, {{"00", 1}, {"01", 1}})), PreconditionError);
}

TEST(separability, prime_shortcut) {
    EXPECT_TRUE(prime_m_shortcut(2));
    EXPECT_TRUE(prime_m_shortcut(3));
    EXPECT_FALSE(prime_m_shortcut(4));
    EXPECT_TRUE(prime_m_shortcut(5));
    EXPECT_FALSE(prime_m_shortcut(9));
    EXPECT_TRUE(prime_m_shortcut(1048573));
    EXPECT_FALSE(prime_m_shortcut(1048576));
    EXPECT_THROW(prime_m_shortcut(1), PreconditionError);
}

TEST(separability, m4_verdict_examples) {
    auto c4 = m4_verdict(zoo::c4());
    EXPECT_FALSE(c4.separable);
    EXPECT_EQ(c4.reason, M4Reason::kCoefficientMismatch);

    auto plus = m4_verdict(c4_all_plus());
    ASSERT_TRUE(plus.separable);
    ASSERT_TRUE(plus.witness);
    expect_witness_reproduces(c4_all_plus(), *plus.witness);

    auto w4 = m4_verdict(zoo::w(4));
    EXPECT_FALSE(w4.separable);
    EXPECT_EQ(w4.reason, M4Reason::kNoComplementaryPairs);

    EXPECT_THROW(m4_verdict(zoo::ghz(3)), PreconditionError);
    EXPECT_THROW(m4_verdict(state(3, {{"000", 1}, {"001", 1}, {"010", 1}, {"011", 1}})), PreconditionError);
}

TEST(separability, m4_agrees_with_scan) {
    zoo::Rng rng(404);
    for (int trial = 0; trial < 300; ++trial) {
        PureState s = trial % 2 ? zoo::random_product({1 + static_cast<unsigned>(rng.below(5)), 1 + static_cast<unsigned>(rng.below(5))}, rng.below(1u << 30))
                                : zoo::random_sparse(2 + static_cast<unsigned>(rng.below(8)), 4, rng.below(1u << 30));
        if (s.m() != 4 || has_constant_column(s)) {
            continue;
        }
        if (trial % 4 == 1) {
            auto terms = s.terms();
            terms[2].coeff += ExactComplex(1);
            if (terms[2].coeff.is_zero()) {
                terms[2].coeff = ExactComplex(7);
            }
            s = PureState(s.n(), terms);
        }
        auto fast = m4_verdict(s);
        auto scan = split_once(s);
        EXPECT_EQ(fast.separable, scan.has_value()) << serialize_state(s);
        if (fast.witness) {
            expect_witness_reproduces(s, *fast.witness);
        }
    }
}

TEST(separability, classify_named_states) {
    EXPECT_EQ(classify(zoo::c4()).family, Family::kFamily4);
    EXPECT_EQ(classify(c4_all_plus()).family, Family::kFamily2);
    EXPECT_EQ(classify(zoo::bell()).family, Family::kFamily3);
    EXPECT_EQ(classify(zoo::c2()).family, Family::kFamily4);
    for (unsigned n = 2; n <= 12; ++n) {
        EXPECT_EQ(classify(zoo::ghz(n)).family, Family::kFamily3) << n;
        EXPECT_EQ(classify(zoo::w(n)).family, Family::kFamily3) << n;
    }
    auto r = classify(qsep::testing::worked_example());
    EXPECT_EQ(r.family, Family::kFamily2);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->subset, QubitSubset::of(3, {2}));
}

TEST(separability, classify_family1) {
    PureState s = tensor_product(state(1, {{"0", 1}}), zoo::bell(), QubitSubset::of(3, {1}));
    auto r = classify(s);
    EXPECT_EQ(r.family, Family::kFamily1);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->subset, QubitSubset::of(3, {1}));
    expect_witness_reproduces(s, *r.witness);

    EXPECT_EQ(classify(state(1, {{"1", 3}})).family, Family::kFamily1);
    EXPECT_EQ(classify(state(1, {{"0", 1}, {"1", -1}})).family, Family::kFamily1);
    EXPECT_EQ(classify(state(5, {{"10110", 2}})).family, Family::kFamily1);
}

TEST(separability, classify_report_summaries) {
    auto c4 = classify(zoo::c4());
    EXPECT_EQ(c4.fast_path, FastPath::kM4);
    EXPECT_GE(c4.search.canonical_forms, 1u);
    EXPECT_EQ(c4.search.rank1_hits, 0u);
    EXPECT_EQ(c4.search.subsets_examined, 7u);

    auto ghz = classify(zoo::ghz(6));
    EXPECT_EQ(ghz.fast_path, FastPath::kPrimeM);

    SearchOptions slow;
    slow.prime_shortcut = false;
    slow.m4_fast_path = false;
    auto ghz_scan = classify(zoo::ghz(6), slow);
    EXPECT_EQ(ghz_scan.family, Family::kFamily3);
    EXPECT_EQ(ghz_scan.search.canonical_forms, 0u);
    EXPECT_EQ(ghz_scan.search.subsets_examined, 31u);
    EXPECT_EQ(classify(zoo::c4(), slow).family, Family::kFamily4);
    EXPECT_EQ(classify(c4_all_plus(), slow).family, Family::kFamily2);

    auto ex = classify(qsep::testing::worked_example(), slow);
    EXPECT_EQ(ex.search.subsets_examined, 2u);  // {1}, then {1,3} succeeds
    EXPECT_EQ(ex.search.canonical_forms, 1u);
    EXPECT_EQ(ex.search.rank1_hits, 1u);
}

TEST(separability, workers_do_not_change_results) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        PureState s = seed % 2 ? zoo::random_product({2, 3, 2}, seed) : zoo::random_sparse(7, 8, seed);
        SearchOptions one;
        SearchOptions four;
        four.workers = 4;
        auto a = classify(s, one);
        auto b = classify(s, four);
        EXPECT_EQ(a.family, b.family);
        EXPECT_EQ(a.search, b.search);
        EXPECT_EQ(a.witness.has_value(), b.witness.has_value());
        if (a.witness) {
            EXPECT_EQ(a.witness->subset, b.witness->subset);
            EXPECT_EQ(a.witness->left, b.witness->left);
        }
    }
}

TEST(separability, split_at_matches_schmidt_rank_with_constant_columns) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        PureState s = zoo::random_sparse(6, 2 + seed % 6, seed);
        if (seed % 3 == 0) {
            s = tensor_product(zoo::random_product({2, 1}, seed), state(3, {{"010", 1}}), QubitSubset(0b101010, 6));
        }
        DenseState d = dense_vector(s);
        SubsetEnumerator all(s.n());
        while (auto sub = all.next()) {
            auto w = split_at(s, *sub);
            EXPECT_EQ(w.has_value(), schmidt_rank(d, *sub) == 1) << serialize_state(s) << sub->str();
            if (w) {
                EXPECT_EQ(tensor_product(w->left, w->right, w->subset), s);
            }
        }
    }
}

TEST(separability, factorize_three_blocks) {
    PureState zero = state(1, {{"0", 1}});
    PureState bell = zoo::bell();
    PureState plus = state(1, {{"0", 1}, {"1", 1}});
    PureState s = tensor_product(tensor_product(zero, bell, QubitSubset::of(3, {1})), plus, QubitSubset::of(4, {1, 2, 3}));
    FactorTree tree = factorize_fully(s);
    ASSERT_EQ(tree.factors.size(), 3u);
    EXPECT_EQ(tree.factors[0].subset, QubitSubset::of(4, {1}));
    EXPECT_EQ(tree.factors[1].subset, QubitSubset::of(4, {2, 3}));
    EXPECT_EQ(tree.factors[2].subset, QubitSubset::of(4, {4}));
    EXPECT_EQ(product(tree), s);
}

TEST(separability, factorize_entangled_and_single_term) {
    FactorTree ghz = factorize_fully(zoo::ghz(5));
    ASSERT_EQ(ghz.factors.size(), 1u);
    EXPECT_EQ(ghz.factors[0].subset.size(), 5u);

    PureState basis = state(3, {{"101", ExactComplex(Rational(-2, 3))}});
    FactorTree t = factorize_fully(basis);
    EXPECT_EQ(t.factors.size(), 3u);
    EXPECT_EQ(product(t), basis);
}

TEST(separability, factorize_full_support_ratio_state) {
    for (unsigned n = 3; n <= 7; ++n) {
        zoo::Rng rng(n);
        const std::uint64_t half = std::uint64_t{1} << (n - 1);
        const ExactComplex kappa(Rational(-3, 4), Rational(1, 2));
        std::vector<Term> terms;
        for (std::uint64_t i = 0; i < half; ++i) {
            ExactComplex c = rng.coefficient();
            terms.push_back({i, c});
            terms.push_back({half + i, kappa * c});
        }
        PureState s(n, terms);
        FactorTree tree = factorize_fully(s);
        EXPECT_EQ(tree.factors.front().subset, QubitSubset::of(n, {1}));
        EXPECT_EQ(product(tree), s);
    }
}

TEST(separability, factorize_random_products) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        std::vector<unsigned> blocks{1 + static_cast<unsigned>(seed % 3), 2, 1 + static_cast<unsigned>(seed % 4)};
        auto sample = zoo::random_product_sample(blocks, seed);
        FactorTree tree = factorize_fully(sample.state);
        EXPECT_EQ(product(tree), sample.state);
        ASSERT_EQ(tree.factors.size(), blocks.size());
        for (const auto &f : tree.factors) {
            EXPECT_NE(std::find(sample.blocks.begin(), sample.blocks.end(), f.subset), sample.blocks.end());
            if (f.subset.size() > 1) {
                EXPECT_FALSE(classify(f.state).separable());
            }
        }
    }
}

TEST(separability, classify_invariant_under_permutation_and_scale) {
    std::mt19937_64 rng(77);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        PureState s = seed % 2 ? zoo::random_product({2, 2}, seed) : zoo::random_sparse(5, 4 + seed % 5, seed);
        std::vector<unsigned> perm(s.n());
        std::iota(perm.begin(), perm.end(), 1u);
        std::shuffle(perm.begin(), perm.end(), rng);
        const Family f = classify(s).family;
        EXPECT_EQ(classify(permute_qubits(s, perm)).family, f);
        EXPECT_EQ(classify(scaled(s, ExactComplex(Rational(5, 3), Rational(-1)))).family, f);
    }
}

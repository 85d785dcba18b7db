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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "qsep/bsm.hpp"
#include "qsep/coeff.hpp"
#include "qsep/family.hpp"
#include "qsep/pure_state.hpp"

namespace qsep {

/// Which shortcut decided the verdict.
enum class FastPath { kNone, kPrimeM, kM4 };

constexpr std::string_view fast_path_name(FastPath p) {
    switch (p) {
        case FastPath::kPrimeM:
            return "prime-m";
        case FastPath::kM4:
            return "m=4";
        case FastPath::kNone:
            break;
    }
    return "none";
}

inline constexpr std::string_view kWitnessScaleConvention =
    "exact factors; left factor's lowest-label coefficient fixed to 1, right factor carries the scale";

/// s == tensor_product(left, right, subset), exactly.
struct SplitWitness {
    QubitSubset subset;
    PureState left;
    PureState right;
};

struct SearchSummary {
    std::size_t subsets_examined = 0;
    std::size_t canonical_forms = 0;
    std::size_t rank1_hits = 0;

    friend bool operator==(const SearchSummary &, const SearchSummary &) = default;
};

struct ClassificationReport {
    Family family;
    std::optional<SplitWitness> witness;
    SearchSummary search;
    FastPath fast_path = FastPath::kNone;

    bool separable() const { return is_separable(family); }
};

struct Factor {
    QubitSubset subset;
    PureState state;
};

/// Disjoint factors covering the register, ordered by smallest qubit index.
struct FactorTree {
    unsigned n = 0;
    std::vector<Factor> factors;
};

struct SearchOptions {
    /// Prime m decides Family 3 without scanning.
    bool prime_shortcut = true;
    /// m = 4 decides separability from complementary pairs.
    bool m4_fast_path = true;
    /// Threads for the subset scan; results do not depend on this.
    unsigned workers = 1;
};

enum class M4Reason { kSeparable, kNoComplementaryPairs, kCoefficientMismatch };

struct M4Verdict {
    bool separable = false;
    M4Reason reason = M4Reason::kNoComplementaryPairs;
    std::optional<SplitWitness> witness;
};

/// Trial division; m <= 2^20 in practice.
inline bool prime_m_shortcut(std::uint64_t m) {
    if (m < 2) {
        throw PreconditionError("prime_m_shortcut: m must be at least 2");
    }
    if (m < 4) {
        return true;
    }
    if (m % 2 == 0) {
        return false;
    }
    for (std::uint64_t d = 3; d * d <= m; d += 2) {
        if (m % d == 0) {
            return false;
        }
    }
    return true;
}

/// The state on the qubits of `mask` alone. Every qubit outside the mask must be constant.
inline PureState restrict_to(const PureState &s, std::uint64_t mask) {
    const std::uint64_t outside = ~mask & full_mask(s.n());
    const std::uint64_t ref = s.terms().front().bits & outside;
    std::vector<Term> terms;
    terms.reserve(s.m());
    for (const auto &t : s.terms()) {
        if ((t.bits & outside) != ref) {
            throw PreconditionError("restrict_to: qubits outside the mask are not constant");
        }
        terms.push_back({extract_bits(t.bits, mask), t.coeff});
    }
    return {static_cast<unsigned>(std::popcount(mask)), std::move(terms)};
}

namespace detail {

inline PureState pattern_state(unsigned width, const std::vector<std::uint64_t> &patterns,
                               const std::vector<ExactComplex> &amps) {
    std::vector<Term> terms;
    terms.reserve(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        terms.push_back({patterns[i], amps[i]});
    }
    return {width, std::move(terms)};
}

inline SplitWitness witness_from(const CanonicalForm &cf, const RankOneFactors &f) {
    const unsigned k = cf.subset.size();
    return {cf.subset, pattern_state(k, cf.left_patterns, f.alpha),
            pattern_state(cf.subset.n() - k, cf.right_patterns, f.beta)};
}

/// Rescales so the left factor's first coefficient is 1.
inline SplitWitness fix_gauge(SplitWitness w) {
    const ExactComplex c = w.left.coeff(0);
    if (c == ExactComplex(1)) {
        return w;
    }
    return {w.subset, scaled(w.left, ExactComplex(1) / c), scaled(w.right, c)};
}

/// Split at `subset` of a state without constant columns.
inline std::optional<SplitWitness> split_at_nonconstant(const PureState &s, const QubitSubset &subset) {
    auto cf = try_canonical_form(s, subset);
    if (!cf) {
        return std::nullopt;
    }
    auto a = coefficient_matrix(s, *cf);
    if (!is_rank_one(a)) {
        return std::nullopt;
    }
    return witness_from(*cf, solve_rank_one(a));
}

/// Witness subsets are reported on the smaller side, the side holding qubit 1 on ties.
inline bool prefer_complement(const QubitSubset &subset) {
    const unsigned k = subset.size();
    const unsigned rest = subset.n() - k;
    return rest < k || (rest == k && !subset.contains(1));
}

struct ScanResult {
    std::optional<QubitSubset> first_split;
    SearchSummary summary;
};

/// Walks every qubit-1 subset in enumeration order. With `stop_at_first`, the
/// summary covers the prefix up to and including the first rank-one split.
inline ScanResult scan_subsets(const PureState &s, bool stop_at_first, unsigned workers) {
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    workers = std::max(1u, workers);

    struct Hits {
        std::vector<std::size_t> canonical;
        std::vector<std::size_t> rank1;
    };
    std::vector<Hits> hits(workers);
    std::atomic<std::size_t> best{kNone};

    auto work = [&](unsigned w) {
        SubsetEnumerator all(s.n());
        std::vector<std::uint64_t> left;
        std::vector<std::uint64_t> right;
        std::size_t index = 0;
        for (auto subset = all.next(); subset; subset = all.next(), ++index) {
            if (index % workers != w) {
                continue;
            }
            if (stop_at_first && index > best.load(std::memory_order_relaxed)) {
                break;
            }
            auto cf = canonical_form_unchecked(s, *subset, left, right);
            if (!cf) {
                continue;
            }
            hits[w].canonical.push_back(index);
            if (is_rank_one(coefficient_matrix(s, *cf))) {
                hits[w].rank1.push_back(index);
                std::size_t cur = best.load();
                while (index < cur && !best.compare_exchange_weak(cur, index)) {
                }
                if (stop_at_first) {
                    break;
                }
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    ScanResult out;
    const std::size_t total = s.n() >= 2 ? (std::size_t{1} << (s.n() - 1)) - 1 : 0;
    const std::size_t first = best.load();
    const std::size_t limit = (stop_at_first && first != kNone) ? first : kNone;
    out.summary.subsets_examined = limit == kNone ? total : limit + 1;
    for (const auto &h : hits) {
        out.summary.canonical_forms +=
            static_cast<std::size_t>(std::count_if(h.canonical.begin(), h.canonical.end(), [&](auto i) { return i <= limit; }));
        out.summary.rank1_hits +=
            static_cast<std::size_t>(std::count_if(h.rank1.begin(), h.rank1.end(), [&](auto i) { return i <= limit; }));
    }
    if (first != kNone) {
        SubsetEnumerator all(s.n());
        for (std::size_t i = 0; i < first; ++i) {
            all.next();
        }
        out.first_split = all.next();
    }
    return out;
}

/// Oriented, gauge-fixed witness for a subset already known to split.
inline SplitWitness oriented_witness(const PureState &s, const QubitSubset &subset) {
    const QubitSubset side = prefer_complement(subset) ? subset.complement() : subset;
    auto w = split_at_nonconstant(s, side);
    if (!w) {
        throw std::logic_error("split found at " + subset.str() + " but not at its complement");
    }
    return *w;
}

}  // namespace detail

/// Split across `subset` if the state is a product across it. Constant columns
/// are allowed: they are stripped first and reattached to the factors.
inline std::optional<SplitWitness> split_at(const PureState &s, const QubitSubset &subset) {
    if (subset.n() != s.n() || !subset.is_proper_nonempty()) {
        throw PreconditionError("split_at: subset must be a nonempty proper subset of the register");
    }
    const auto constants = constant_columns(s);
    if (constants.empty()) {
        return detail::split_at_nonconstant(s, subset);
    }
    std::uint64_t cmask = 0;
    for (const auto &c : constants) {
        cmask |= qubit_bit(s.n(), c.qubit);
    }
    const std::uint64_t all = full_mask(s.n());
    const std::uint64_t rmask = ~cmask & all;
    const std::uint64_t lmask = subset.mask();
    const std::uint64_t cbits = s.terms().front().bits & cmask;
    const std::uint64_t left_live = lmask & rmask;
    const std::uint64_t right_live = ~lmask & rmask;

    auto constant_state = [&](std::uint64_t side) {
        return PureState(static_cast<unsigned>(std::popcount(side)), {{extract_bits(cbits, side), ExactComplex(1)}});
    };
    if (left_live == 0) {
        return SplitWitness{subset, constant_state(lmask), restrict_to(s, ~lmask & all)};
    }
    if (right_live == 0) {
        return detail::fix_gauge(SplitWitness{subset, restrict_to(s, lmask), constant_state(~lmask & all)});
    }
    const PureState residual = restrict_to(s, rmask);
    const QubitSubset inner(extract_bits(left_live, rmask), residual.n());
    auto w = detail::split_at_nonconstant(residual, inner);
    if (!w) {
        return std::nullopt;
    }
    // Lift a factor living on `live` (a subset of `side`) back onto all of `side`.
    auto lift = [&](const PureState &part, std::uint64_t live, std::uint64_t side) {
        std::vector<Term> terms;
        for (const auto &t : part.terms()) {
            terms.push_back({extract_bits(deposit_bits(t.bits, live) | (cbits & side), side), t.coeff});
        }
        return PureState(static_cast<unsigned>(std::popcount(side)), std::move(terms));
    };
    return SplitWitness{subset, lift(w->left, left_live, lmask), lift(w->right, right_live, ~lmask & all)};
}

/// First rank-one split in candidate order, or nothing when the state is
/// genuinely entangled.
inline std::optional<SplitWitness> split_once(const PureState &s, unsigned workers = 1) {
    if (s.m() < 2 || has_constant_column(s)) {
        throw PreconditionError("split_once requires m > 1 and no constant column");
    }
    auto scan = detail::scan_subsets(s, true, workers);
    if (!scan.first_split) {
        return std::nullopt;
    }
    return detail::oriented_witness(s, *scan.first_split);
}

/// Complementary-pair test for four-term states.
///
/// With labels sorted l1 < l2 < l3 < l4, complementation reverses order, so the
/// only possible pairing is (l1, l4), (l2, l3).
inline M4Verdict m4_verdict(const PureState &s) {
    if (s.m() != 4 || has_constant_column(s)) {
        throw PreconditionError("m4_verdict requires m = 4 and no constant column");
    }
    const std::uint64_t full = full_mask(s.n());
    const auto &t = s.terms();
    auto complementary = [&](std::size_t i, std::size_t j) { return (t[i].bits ^ t[j].bits) == full; };
    const bool pairs_14_23 = complementary(0, 3) && complementary(1, 2);
    if ((complementary(0, 1) && complementary(2, 3)) || (complementary(0, 2) && complementary(1, 3))) {
        throw std::logic_error("m4_verdict: complementary pairing inconsistent with sorted order");
    }
    if (!pairs_14_23) {
        return {false, M4Reason::kNoComplementaryPairs, std::nullopt};
    }
    const ExactComplex &d1 = t[0].coeff;
    const ExactComplex &d2 = t[1].coeff;
    const ExactComplex &d3 = t[2].coeff;
    const ExactComplex &d4 = t[3].coeff;
    if (d1 * d4 != d2 * d3) {
        return {false, M4Reason::kCoefficientMismatch, std::nullopt};
    }
    // l1 = (q, p), l2 = (q, p'), l3 = (q', p), l4 = (q', p') with q on the
    // shared bits of l1, l2 and p on the differing bits.
    const std::uint64_t differ = t[0].bits ^ t[1].bits;
    const std::uint64_t shared = ~differ & full;
    const ExactComplex mu = d1 / d2;
    const auto nq = static_cast<unsigned>(std::popcount(shared));
    const auto np = static_cast<unsigned>(std::popcount(differ));
    PureState on_shared(nq, {{extract_bits(t[0].bits, shared), d2}, {extract_bits(t[3].bits, shared), d4}});
    PureState on_differ(np, {{extract_bits(t[0].bits, differ), mu}, {extract_bits(t[1].bits, differ), ExactComplex(1)}});
    SplitWitness w{QubitSubset(shared, s.n()), std::move(on_shared), std::move(on_differ)};
    if (detail::prefer_complement(w.subset)) {
        w = {w.subset.complement(), std::move(w.right), std::move(w.left)};
    }
    return {true, M4Reason::kSeparable, detail::fix_gauge(std::move(w))};
}

inline ClassificationReport classify(const PureState &s, const SearchOptions &opt = {}) {
    const auto constants = constant_columns(s);
    if (s.n() == 1 || !constants.empty()) {
        ClassificationReport r{Family::kFamily1, std::nullopt, {}, FastPath::kNone};
        if (s.n() >= 2) {
            r.witness = split_at(s, QubitSubset::of(s.n(), {constants.front().qubit}));
        }
        return r;
    }
    if (opt.prime_shortcut && prime_m_shortcut(s.m())) {
        return {Family::kFamily3, std::nullopt, {}, FastPath::kPrimeM};
    }
    if (opt.m4_fast_path && s.m() == 4) {
        auto v = m4_verdict(s);
        if (v.separable) {
            return {Family::kFamily2, std::move(v.witness), {}, FastPath::kM4};
        }
        // Entanglement is settled; the scan only tells Family 3 from Family 4.
        auto scan = detail::scan_subsets(s, false, opt.workers);
        if (scan.summary.rank1_hits != 0) {
            throw std::logic_error("m4_verdict and subset scan disagree");
        }
        return {scan.summary.canonical_forms > 0 ? Family::kFamily4 : Family::kFamily3, std::nullopt, scan.summary,
                FastPath::kM4};
    }
    auto scan = detail::scan_subsets(s, true, opt.workers);
    if (scan.first_split) {
        return {Family::kFamily2, detail::oriented_witness(s, *scan.first_split), scan.summary, FastPath::kNone};
    }
    return {scan.summary.canonical_forms > 0 ? Family::kFamily4 : Family::kFamily3, std::nullopt, scan.summary,
            FastPath::kNone};
}

namespace detail {

/// Factors `s`, which lives on the global qubits of `where` (a mask in an n-qubit register).
inline void factorize_into(const PureState &s, std::uint64_t where, unsigned n, std::vector<Factor> &out,
                           unsigned workers) {
    const auto constants = constant_columns(s);
    if (!constants.empty() && s.n() > 1) {
        std::uint64_t cmask = 0;
        for (const auto &c : constants) {
            cmask |= qubit_bit(s.n(), c.qubit);
        }
        const std::uint64_t live = ~cmask & full_mask(s.n());
        ExactComplex carry(1);
        if (live == 0) {
            carry = s.coeff(0);  // single term: its coefficient rides on the first constant factor
        }
        for (const auto &c : constants) {
            const std::uint64_t global = deposit_bits(qubit_bit(s.n(), c.qubit), where);
            out.push_back({QubitSubset(global, n), PureState(1, {{c.value ? 1u : 0u, carry}})});
            carry = ExactComplex(1);
        }
        if (live != 0) {
            factorize_into(restrict_to(s, live), deposit_bits(live, where), n, out, workers);
        }
        return;
    }
    if (s.n() == 1) {
        out.push_back({QubitSubset(where, n), s});
        return;
    }
    auto w = split_once(s, workers);
    if (!w) {
        out.push_back({QubitSubset(where, n), s});
        return;
    }
    factorize_into(w->left, deposit_bits(w->subset.mask(), where), n, out, workers);
    factorize_into(w->right, deposit_bits(w->subset.complement().mask(), where), n, out, workers);
}

}  // namespace detail

/// Splits off constant qubits, then applies split_once until every factor is unsplittable.
inline FactorTree factorize_fully(const PureState &s, unsigned workers = 1) {
    FactorTree tree{s.n(), {}};
    detail::factorize_into(s, full_mask(s.n()), s.n(), tree.factors, workers);
    std::sort(tree.factors.begin(), tree.factors.end(),
              [](const Factor &a, const Factor &b) { return a.subset.min_index() < b.subset.min_index(); });
    return tree;
}

/// Iterated tensor product of the factors.
inline PureState product(const FactorTree &tree) {
    if (tree.factors.empty()) {
        throw PreconditionError("product of an empty factor list");
    }
    std::uint64_t acc_mask = tree.factors.front().subset.mask();
    PureState acc = tree.factors.front().state;
    for (std::size_t i = 1; i < tree.factors.size(); ++i) {
        const auto &f = tree.factors[i];
        if ((f.subset.mask() & acc_mask) != 0) {
            throw StateError("factor subsets overlap");
        }
        const std::uint64_t joint = acc_mask | f.subset.mask();
        const auto width = static_cast<unsigned>(std::popcount(joint));
        acc = tensor_product(acc, f.state, QubitSubset(extract_bits(acc_mask, joint), width));
        acc_mask = joint;
    }
    if (acc_mask != full_mask(tree.n)) {
        throw StateError("factors do not cover the register");
    }
    return acc;
}

}  // namespace qsep

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

// Support-level machinery over the basis state matrix (BSM): the m x n 0/1
// matrix whose rows are the labels of a state's nonzero terms. Moving a set of
// columns to the left is a qubit permutation; reordering rows is free. A
// canonical form exists for a column set S when the support is exactly the
// Cartesian product of g >= 2 patterns on S and h >= 2 patterns on the rest.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qsep/pure_state.hpp"

namespace qsep {

/// A qubit whose bit is the same in every basis label of the support.
struct ConstantColumn {
    unsigned qubit;
    bool value;

    friend bool operator==(const ConstantColumn &, const ConstantColumn &) = default;
};

inline std::vector<ConstantColumn> constant_columns(const PureState &s) {
    std::uint64_t all_ones = full_mask(s.n());
    std::uint64_t all_zeros = full_mask(s.n());
    for (const auto &t : s.terms()) {
        all_ones &= t.bits;
        all_zeros &= ~t.bits;
    }
    std::vector<ConstantColumn> out;
    for (unsigned q = 1; q <= s.n(); ++q) {
        const std::uint64_t b = qubit_bit(s.n(), q);
        if (all_ones & b) {
            out.push_back({q, true});
        } else if (all_zeros & b) {
            out.push_back({q, false});
        }
    }
    return out;
}

inline bool has_constant_column(const PureState &s) {
    std::uint64_t all_ones = full_mask(s.n());
    std::uint64_t all_zeros = full_mask(s.n());
    for (const auto &t : s.terms()) {
        all_ones &= t.bits;
        all_zeros &= ~t.bits;
    }
    return (all_ones | all_zeros) != 0;
}

/// Block form of the BSM for one bipartition.
///
/// left_patterns / right_patterns are packed (extract_bits) patterns on the
/// subset and its complement, ascending. index_map[s * h + t] is the position in
/// the source state's term list of the label left_patterns[s] x right_patterns[t].
struct CanonicalForm {
    QubitSubset subset;
    std::vector<std::uint64_t> left_patterns;
    std::vector<std::uint64_t> right_patterns;
    std::vector<std::size_t> index_map;

    std::size_t g() const { return left_patterns.size(); }
    std::size_t h() const { return right_patterns.size(); }
    std::size_t term_index(std::size_t s, std::size_t t) const { return index_map[s * h() + t]; }

    /// The full n-bit label at grid cell (s, t).
    std::uint64_t label(std::size_t s, std::size_t t) const {
        return deposit_bits(left_patterns[s], subset.mask()) |
               deposit_bits(right_patterns[t], subset.complement().mask());
    }
};

namespace detail {

/// Sorted distinct values of (label & mask), written into `scratch`.
inline std::size_t count_distinct_masked(const PureState &s, std::uint64_t mask, std::vector<std::uint64_t> &scratch) {
    scratch.clear();
    for (const auto &t : s.terms()) {
        scratch.push_back(t.bits & mask);
    }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    return scratch.size();
}

inline void require_bipartition_input(const PureState &s, const QubitSubset &subset) {
    if (subset.n() != s.n()) {
        throw PreconditionError("subset register width differs from state");
    }
    if (!subset.is_proper_nonempty()) {
        throw PreconditionError("subset " + subset.str() + " must be a nonempty proper subset");
    }
    if (has_constant_column(s)) {
        throw PreconditionError("canonical-form search requires a state without constant columns");
    }
}

}  // namespace detail

namespace detail {

inline bool passes_divisor_prune(std::size_t m, std::size_t g) { return g > 1 && m % g == 0 && m / g > 1; }

/// try_canonical_form without the precondition checks; callers guarantee them.
inline std::optional<CanonicalForm> canonical_form_unchecked(const PureState &s, const QubitSubset &subset,
                                                             std::vector<std::uint64_t> &left,
                                                             std::vector<std::uint64_t> &right) {
    const std::size_t m = s.m();
    const std::uint64_t lmask = subset.mask();
    const std::uint64_t rmask = subset.complement().mask();

    const std::size_t g = count_distinct_masked(s, lmask, left);
    if (!passes_divisor_prune(m, g)) {
        return std::nullopt;
    }
    const std::size_t h = count_distinct_masked(s, rmask, right);
    // Distinct labels give an injection into left x right, so g * h == m is
    // exactly Cartesian completeness.
    if (g * h != m) {
        return std::nullopt;
    }

    CanonicalForm cf{subset, {}, {}, std::vector<std::size_t>(m)};
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t bits = s.terms()[i].bits;
        const auto si = static_cast<std::size_t>(std::lower_bound(left.begin(), left.end(), bits & lmask) - left.begin());
        const auto ti =
            static_cast<std::size_t>(std::lower_bound(right.begin(), right.end(), bits & rmask) - right.begin());
        cf.index_map[si * h + ti] = i;
    }
    cf.left_patterns.reserve(g);
    for (auto v : left) {
        cf.left_patterns.push_back(extract_bits(v, lmask));
    }
    cf.right_patterns.reserve(h);
    for (auto v : right) {
        cf.right_patterns.push_back(extract_bits(v, rmask));
    }
    return cf;
}

}  // namespace detail

/// Canonical form for `subset`, or nothing when the support is not a g x h
/// Cartesian product with g, h > 1.
inline std::optional<CanonicalForm> try_canonical_form(const PureState &s, const QubitSubset &subset) {
    detail::require_bipartition_input(s, subset);
    std::vector<std::uint64_t> left;
    std::vector<std::uint64_t> right;
    return detail::canonical_form_unchecked(s, subset, left, right);
}

/// Enumerates subsets of {1..n} that contain qubit 1 and are proper, ordered by
/// size and then by (label-aligned) mask value. There are 2^(n-1) - 1 of them.
class SubsetEnumerator {
  public:
    explicit SubsetEnumerator(unsigned n) : n_(n), high_(qubit_bit(n, 1)), rest_(n - 1) { check_qubit_count(n); }

    std::optional<QubitSubset> next() {
        if (n_ < 2 || done_) {
            return std::nullopt;
        }
        if (!started_) {
            started_ = true;
        } else if (!advance()) {
            done_ = true;
            return std::nullopt;
        }
        return QubitSubset(high_ | combo_, n_);
    }

  private:
    bool advance() {
        const std::uint64_t limit = std::uint64_t{1} << rest_;
        if (combo_ != 0) {
            // Gosper's hack: next larger word with the same popcount.
            const std::uint64_t c = combo_ & (~combo_ + 1);
            const std::uint64_t r = combo_ + c;
            const std::uint64_t next = (((r ^ combo_) >> 2) / c) | r;
            if (next < limit) {
                combo_ = next;
                return true;
            }
        }
        ++size_;
        if (size_ >= rest_) {
            return false;  // the full register is not a proper subset
        }
        combo_ = (std::uint64_t{1} << size_) - 1;
        return true;
    }

    unsigned n_;
    std::uint64_t high_;
    unsigned rest_;
    unsigned size_ = 0;         // qubits chosen besides qubit 1
    std::uint64_t combo_ = 0;  // those qubits, within the low rest_ bits
    bool started_ = false;
    bool done_ = false;
};

/// Lazy stream of subsets that survive the divisor prune: the number g of
/// distinct patterns on the subset satisfies 1 < g, g | m, m / g > 1.
class CandidateSubsets {
  public:
    explicit CandidateSubsets(const PureState &s) : state_(&s), all_(s.n()) {
        if (s.n() >= 2 && has_constant_column(s)) {
            throw PreconditionError("candidate search requires a state without constant columns");
        }
    }

    std::optional<QubitSubset> next() {
        while (auto subset = all_.next()) {
            ++examined_;
            const std::size_t g = detail::count_distinct_masked(*state_, subset->mask(), scratch_);
            if (detail::passes_divisor_prune(state_->m(), g)) {
                return subset;
            }
        }
        return std::nullopt;
    }

    /// Subsets enumerated so far, pruned or not.
    std::size_t examined() const { return examined_; }

  private:
    const PureState *state_;
    SubsetEnumerator all_;
    std::vector<std::uint64_t> scratch_;
    std::size_t examined_ = 0;
};

inline std::vector<QubitSubset> candidate_subsets(const PureState &s) {
    std::vector<QubitSubset> out;
    CandidateSubsets stream(s);
    while (auto subset = stream.next()) {
        out.push_back(*subset);
    }
    return out;
}

}  // namespace qsep

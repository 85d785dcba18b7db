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
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsep/exact.hpp"

namespace qsep {

inline constexpr unsigned kMaxQubits = 63;
inline constexpr std::size_t kMaxTerms = std::size_t{1} << 20;

/// A value that violates a documented invariant of a state or label.
struct StateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A call whose documented precondition does not hold.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Single-bit mask of 1-based qubit `q` in an n-qubit label.
/// Qubit 1 is the leftmost character of the bitstring and the most significant bit.
constexpr std::uint64_t qubit_bit(unsigned n, unsigned q) { return std::uint64_t{1} << (n - q); }

constexpr std::uint64_t full_mask(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

/// Packs the bits of `value` selected by `mask` into the low bits, preserving order.
constexpr std::uint64_t extract_bits(std::uint64_t value, std::uint64_t mask) {
    std::uint64_t out = 0;
    std::uint64_t out_bit = 1;
    while (mask != 0) {
        std::uint64_t low = mask & (~mask + 1);
        if (value & low) {
            out |= out_bit;
        }
        out_bit <<= 1;
        mask ^= low;
    }
    return out;
}

/// Inverse of extract_bits: scatters the low bits of `value` into the positions of `mask`.
constexpr std::uint64_t deposit_bits(std::uint64_t value, std::uint64_t mask) {
    std::uint64_t out = 0;
    std::uint64_t in_bit = 1;
    while (mask != 0) {
        std::uint64_t low = mask & (~mask + 1);
        if (value & in_bit) {
            out |= low;
        }
        in_bit <<= 1;
        mask ^= low;
    }
    return out;
}

inline void check_qubit_count(unsigned n) {
    if (n < 1 || n > kMaxQubits) {
        throw StateError("qubit count " + std::to_string(n) + " outside 1.." + std::to_string(kMaxQubits));
    }
}

/// An n-bit computational basis label |v_1 ... v_n>.
class BasisLabel {
  public:
    BasisLabel(std::uint64_t bits, unsigned n) : bits_(bits), n_(n) {
        check_qubit_count(n);
        if ((bits & ~full_mask(n)) != 0) {
            throw StateError("basis label does not fit in " + std::to_string(n) + " bits");
        }
    }

    static BasisLabel parse(std::string_view text) {
        if (text.empty()) {
            throw ParseError("empty bitstring");
        }
        if (text.size() > kMaxQubits) {
            throw StateError("bitstring length " + std::to_string(text.size()) + " exceeds " +
                             std::to_string(kMaxQubits) + " qubits");
        }
        std::uint64_t bits = 0;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw ParseError("invalid bitstring '" + std::string(text) + "'");
            }
            bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
        }
        return {bits, static_cast<unsigned>(text.size())};
    }

    std::uint64_t bits() const { return bits_; }
    unsigned n() const { return n_; }
    bool bit(unsigned q) const { return (bits_ & qubit_bit(n_, q)) != 0; }
    unsigned weight() const { return static_cast<unsigned>(std::popcount(bits_)); }

    std::string str() const { return to_bitstring(bits_, n_); }

    static std::string to_bitstring(std::uint64_t bits, unsigned n) {
        std::string s(n, '0');
        for (unsigned q = 1; q <= n; ++q) {
            if (bits & qubit_bit(n, q)) {
                s[q - 1] = '1';
            }
        }
        return s;
    }

    friend bool operator==(const BasisLabel &, const BasisLabel &) = default;

  private:
    std::uint64_t bits_;
    unsigned n_;
};

/// Bitwise complement within n bits: the label with every qubit flipped.
inline BasisLabel complement_label(const BasisLabel &b) { return {~b.bits() & full_mask(b.n()), b.n()}; }

/// A set of qubit positions of an n-qubit register.
///
/// The mask is label-aligned: qubit q occupies the same bit as in a BasisLabel,
/// so `label & mask` selects the subset's bits directly.
class QubitSubset {
  public:
    QubitSubset(std::uint64_t mask, unsigned n) : mask_(mask), n_(n) {
        check_qubit_count(n);
        if ((mask & ~full_mask(n)) != 0) {
            throw StateError("subset mask exceeds register of " + std::to_string(n) + " qubits");
        }
    }

    static QubitSubset of(unsigned n, std::initializer_list<unsigned> qubits) {
        return of(n, std::span<const unsigned>(qubits.begin(), qubits.size()));
    }

    static QubitSubset of(unsigned n, std::span<const unsigned> qubits) {
        check_qubit_count(n);
        std::uint64_t mask = 0;
        for (unsigned q : qubits) {
            if (q < 1 || q > n) {
                throw StateError("qubit index " + std::to_string(q) + " outside 1.." + std::to_string(n));
            }
            mask |= qubit_bit(n, q);
        }
        return {mask, n};
    }

    std::uint64_t mask() const { return mask_; }
    unsigned n() const { return n_; }
    unsigned size() const { return static_cast<unsigned>(std::popcount(mask_)); }
    bool empty() const { return mask_ == 0; }
    bool contains(unsigned q) const { return q >= 1 && q <= n_ && (mask_ & qubit_bit(n_, q)) != 0; }
    bool is_proper_nonempty() const { return mask_ != 0 && mask_ != full_mask(n_); }
    QubitSubset complement() const { return {~mask_ & full_mask(n_), n_}; }

    /// Members as ascending 1-based indices.
    std::vector<unsigned> indices() const {
        std::vector<unsigned> out;
        for (unsigned q = 1; q <= n_; ++q) {
            if (contains(q)) {
                out.push_back(q);
            }
        }
        return out;
    }

    unsigned min_index() const { return mask_ == 0 ? 0 : n_ - (63u - static_cast<unsigned>(std::countl_zero(mask_))); }

    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (unsigned q : indices()) {
            if (!first) {
                s += ",";
            }
            s += std::to_string(q);
            first = false;
        }
        return s + "}";
    }

    friend bool operator==(const QubitSubset &, const QubitSubset &) = default;

  private:
    std::uint64_t mask_;
    unsigned n_;
};

struct Term {
    std::uint64_t bits;
    ExactComplex coeff;

    friend bool operator==(const Term &, const Term &) = default;
};

/// A sparse pure state: distinct basis labels with nonzero exact coefficients,
/// kept sorted ascending by label. Normalization is not tracked.
class PureState {
  public:
    /// Validates and sorts. Duplicate labels are rejected, never merged.
    PureState(unsigned n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
        check_qubit_count(n);
        if (terms_.empty()) {
            throw StateError("a state needs at least one term");
        }
        if (terms_.size() > kMaxTerms) {
            throw StateError("term count exceeds " + std::to_string(kMaxTerms));
        }
        std::sort(terms_.begin(), terms_.end(), [](const Term &a, const Term &b) { return a.bits < b.bits; });
        const std::uint64_t outside = ~full_mask(n);
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if ((terms_[i].bits & outside) != 0) {
                throw StateError("basis label does not fit in " + std::to_string(n) + " bits");
            }
            if (terms_[i].coeff.is_zero()) {
                throw StateError("zero coefficient on |" + BasisLabel::to_bitstring(terms_[i].bits, n) + ">");
            }
            if (i > 0 && terms_[i].bits == terms_[i - 1].bits) {
                throw StateError("duplicate basis label |" + BasisLabel::to_bitstring(terms_[i].bits, n) + ">");
            }
        }
    }

    unsigned n() const { return n_; }
    std::size_t m() const { return terms_.size(); }
    const std::vector<Term> &terms() const { return terms_; }
    BasisLabel label(std::size_t i) const { return {terms_[i].bits, n_}; }
    const ExactComplex &coeff(std::size_t i) const { return terms_[i].coeff; }

    /// Coefficient of `bits`, zero when the label is outside the support.
    ExactComplex amplitude(std::uint64_t bits) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), bits,
                                   [](const Term &t, std::uint64_t b) { return t.bits < b; });
        if (it != terms_.end() && it->bits == bits) {
            return it->coeff;
        }
        return {};
    }

    friend bool operator==(const PureState &, const PureState &) = default;

  private:
    unsigned n_;
    std::vector<Term> terms_;
};

/// The state multiplied by a nonzero exact scalar.
inline PureState scaled(const PureState &s, const ExactComplex &c) {
    if (c.is_zero()) {
        throw StateError("scaling by zero");
    }
    std::vector<Term> terms = s.terms();
    for (auto &t : terms) {
        t.coeff *= c;
    }
    return {s.n(), std::move(terms)};
}

/// Places `a` on the qubits of `placement` (in ascending order) and `b` on the rest.
inline PureState tensor_product(const PureState &a, const PureState &b, const QubitSubset &placement) {
    if (placement.size() != a.n() || placement.n() - placement.size() != b.n()) {
        throw StateError("tensor_product: placement " + placement.str() + " in " + std::to_string(placement.n()) +
                         " qubits does not match factor widths " + std::to_string(a.n()) + " and " +
                         std::to_string(b.n()));
    }
    if (a.m() * b.m() > kMaxTerms) {
        throw StateError("tensor_product: result exceeds term limit");
    }
    const std::uint64_t left = placement.mask();
    const std::uint64_t right = placement.complement().mask();
    std::vector<Term> terms;
    terms.reserve(a.m() * b.m());
    for (const auto &ta : a.terms()) {
        const std::uint64_t hi = deposit_bits(ta.bits, left);
        for (const auto &tb : b.terms()) {
            terms.push_back({hi | deposit_bits(tb.bits, right), ta.coeff * tb.coeff});
        }
    }
    return {placement.n(), std::move(terms)};
}

/// Moves the bit of qubit i to qubit perm[i-1] in every label.
inline PureState permute_qubits(const PureState &s, std::span<const unsigned> perm) {
    const unsigned n = s.n();
    if (perm.size() != n) {
        throw StateError("permutation length does not match qubit count");
    }
    std::vector<bool> seen(n + 1, false);
    for (unsigned p : perm) {
        if (p < 1 || p > n || seen[p]) {
            throw StateError("qubit permutation is not a bijection on 1.." + std::to_string(n));
        }
        seen[p] = true;
    }
    std::vector<Term> terms;
    terms.reserve(s.m());
    for (const auto &t : s.terms()) {
        std::uint64_t out = 0;
        for (unsigned q = 1; q <= n; ++q) {
            if (t.bits & qubit_bit(n, q)) {
                out |= qubit_bit(n, perm[q - 1]);
            }
        }
        terms.push_back({out, t.coeff});
    }
    return {n, std::move(terms)};
}

/// The state with every qubit flipped.
inline PureState bit_flipped(const PureState &s) {
    std::vector<Term> terms = s.terms();
    for (auto &t : terms) {
        t.bits = ~t.bits & full_mask(s.n());
    }
    return {s.n(), std::move(terms)};
}

}  // namespace qsep

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
#include <array>
#include <bit>
#include <limits>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qsep/bsm.hpp"
#include "qsep/pure_state.hpp"

namespace qsep::zoo {

enum class Kind { kGhz, kW, kDicke, kC4, kLinearCluster, kBell, kC2, kRandomProduct, kRandomSparse };

inline constexpr std::array<std::pair<std::string_view, Kind>, 9> kKindNames{{
    {"ghz", Kind::kGhz},
    {"w", Kind::kW},
    {"dicke", Kind::kDicke},
    {"c4", Kind::kC4},
    {"linear_cluster", Kind::kLinearCluster},
    {"bell", Kind::kBell},
    {"c2", Kind::kC2},
    {"random_product", Kind::kRandomProduct},
    {"random_sparse", Kind::kRandomSparse},
}};

inline std::optional<Kind> parse_kind(std::string_view name) {
    for (const auto &[k, v] : kKindNames) {
        if (k == name) {
            return v;
        }
    }
    return std::nullopt;
}

inline std::string_view kind_name(Kind kind) {
    for (const auto &[k, v] : kKindNames) {
        if (v == kind) {
            return k;
        }
    }
    return "?";
}

struct GeneratorSpec {
    Kind kind = Kind::kGhz;
    unsigned n = 0;                // ghz, w, dicke, linear_cluster, random_sparse
    unsigned k = 0;                // dicke excitations
    std::vector<unsigned> blocks;  // random_product block sizes
    std::size_t m = 0;             // random_sparse term count
    std::uint64_t seed = 0;
};

/// mt19937_64 with a portable bounded draw, so seeded output is identical everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    long long between(long long lo, long long hi) { return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    /// Numerator in [-9, 9] \ {0}, denominator in [1, 9].
    ExactComplex coefficient() {
        long long num = between(-9, 8);
        if (num >= 0) {
            ++num;
        }
        return ExactComplex(Rational(num, between(1, 9)));
    }

    template <class T>
    void shuffle(std::vector<T> &v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

namespace detail {

inline void require(bool ok, const std::string &what) {
    if (!ok) {
        throw StateError("generator: " + what);
    }
}

inline PureState uniform_sum(unsigned n, const std::vector<std::uint64_t> &labels) {
    std::vector<Term> terms;
    terms.reserve(labels.size());
    for (auto b : labels) {
        terms.push_back({b, ExactComplex(1)});
    }
    return {n, std::move(terms)};
}

/// `count` distinct random labels on `width` bits.
inline std::vector<std::uint64_t> distinct_labels(Rng &rng, unsigned width, std::size_t count) {
    std::vector<std::uint64_t> labels;
    const std::uint64_t space = std::uint64_t{1} << width;
    if (count * 2 > space) {
        // Dense request: sample by shuffling the whole space.
        std::vector<std::uint64_t> all(space);
        std::iota(all.begin(), all.end(), 0);
        rng.shuffle(all);
        all.resize(count);
        return all;
    }
    while (labels.size() < count) {
        const std::uint64_t x = rng.below(space);
        if (std::find(labels.begin(), labels.end(), x) == labels.end()) {
            labels.push_back(x);
        }
    }
    return labels;
}

inline PureState random_terms(Rng &rng, unsigned width, const std::vector<std::uint64_t> &labels) {
    std::vector<Term> terms;
    terms.reserve(labels.size());
    for (auto b : labels) {
        terms.push_back({b, rng.coefficient()});
    }
    return {width, std::move(terms)};
}

/// Random factor state on `width` qubits with 2 or 3 terms and no constant qubit.
inline PureState random_block(Rng &rng, unsigned width) {
    const std::uint64_t full = full_mask(width);
    if (width == 1) {
        return random_terms(rng, 1, {0, 1});
    }
    if (rng.below(2) == 0) {
        const std::uint64_t x = rng.below(std::uint64_t{1} << width);
        return random_terms(rng, width, {x, ~x & full});
    }
    for (;;) {
        auto labels = distinct_labels(rng, width, 3);
        PureState candidate = random_terms(rng, width, labels);
        if (!has_constant_column(candidate)) {
            return candidate;
        }
    }
}

}  // namespace detail

inline PureState ghz(unsigned n) {
    detail::require(n >= 2 && n <= kMaxQubits, "ghz needs 2 <= n <= 63");
    return detail::uniform_sum(n, {0, full_mask(n)});
}

/// Sum of all weight-k labels with unit coefficients.
inline PureState dicke(unsigned n, unsigned k) {
    detail::require(n >= 2 && n <= kMaxQubits && k >= 1 && k <= n - 1, "dicke needs 1 <= k <= n-1");
    std::vector<std::uint64_t> labels;
    std::uint64_t x = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (x < limit) {
        labels.push_back(x);
        detail::require(labels.size() <= kMaxTerms, "dicke state exceeds the term limit");
        const std::uint64_t c = x & (~x + 1);
        const std::uint64_t r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    return detail::uniform_sum(n, labels);
}

inline PureState w(unsigned n) { return dicke(n, 1); }

/// 1/2 (|0000> + |0101> + |1010> - |1111>).
inline PureState c4() {
    const ExactComplex half(Rational(1, 2));
    return {4, {{0b0000, half}, {0b0101, half}, {0b1010, half}, {0b1111, -half}}};
}

inline PureState bell() { return detail::uniform_sum(2, {0b00, 0b11}); }

/// 1/2 (|00> + |01> + |10> - |11>).
inline PureState c2() {
    const ExactComplex half(Rational(1, 2));
    return {2, {{0b00, half}, {0b01, half}, {0b10, half}, {0b11, -half}}};
}

/// 2^n terms, sign (-1)^(number of adjacent 11 pairs).
inline PureState linear_cluster(unsigned n) {
    detail::require(n >= 2 && n <= 20, "linear_cluster needs 2 <= n <= 20");
    std::vector<Term> terms;
    terms.reserve(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const int pairs = std::popcount(x & (x >> 1));
        terms.push_back({x, ExactComplex(pairs % 2 == 0 ? 1 : -1)});
    }
    return {n, std::move(terms)};
}

/// A random product state together with the qubits of each block.
struct ProductSample {
    PureState state;
    std::vector<QubitSubset> blocks;
};

inline ProductSample random_product_sample(const std::vector<unsigned> &block_sizes, std::uint64_t seed) {
    detail::require(!block_sizes.empty(), "random_product needs at least one block");
    unsigned n = 0;
    for (unsigned b : block_sizes) {
        detail::require(b >= 1, "random_product blocks must be nonempty");
        n += b;
    }
    detail::require(n <= kMaxQubits, "random_product exceeds 63 qubits");

    Rng rng(seed);
    std::vector<unsigned> order(n);
    std::iota(order.begin(), order.end(), 1u);
    rng.shuffle(order);

    ProductSample out{PureState(1, {{0, ExactComplex(1)}}), {}};
    std::uint64_t acc_mask = 0;
    std::optional<PureState> acc;
    std::size_t next = 0;
    for (unsigned b : block_sizes) {
        std::vector<unsigned> qubits(order.begin() + static_cast<std::ptrdiff_t>(next),
                                     order.begin() + static_cast<std::ptrdiff_t>(next + b));
        next += b;
        const QubitSubset block = QubitSubset::of(n, qubits);
        out.blocks.push_back(block);
        PureState factor = detail::random_block(rng, b);
        if (!acc) {
            acc = std::move(factor);
        } else {
            const std::uint64_t joint = acc_mask | block.mask();
            const auto width = static_cast<unsigned>(std::popcount(joint));
            acc = tensor_product(*acc, factor, QubitSubset(extract_bits(acc_mask, joint), width));
        }
        acc_mask |= block.mask();
    }
    out.state = std::move(*acc);
    return out;
}

inline PureState random_product(const std::vector<unsigned> &block_sizes, std::uint64_t seed) {
    return random_product_sample(block_sizes, seed).state;
}

/// m distinct random labels with random nonzero rational coefficients.
inline PureState random_sparse(unsigned n, std::size_t m, std::uint64_t seed) {
    detail::require(n >= 1 && n <= kMaxQubits, "random_sparse needs 1 <= n <= 63");
    detail::require(m >= 1 && m <= kMaxTerms && (n >= 21 || m <= (std::size_t{1} << n)),
                    "random_sparse needs 1 <= m <= min(2^n, 2^20)");
    Rng rng(seed);
    return detail::random_terms(rng, n, detail::distinct_labels(rng, n, m));
}

inline PureState generate(const GeneratorSpec &spec) {
    switch (spec.kind) {
        case Kind::kGhz:
            return ghz(spec.n);
        case Kind::kW:
            return w(spec.n);
        case Kind::kDicke:
            return dicke(spec.n, spec.k);
        case Kind::kC4:
            return c4();
        case Kind::kLinearCluster:
            return linear_cluster(spec.n);
        case Kind::kBell:
            return bell();
        case Kind::kC2:
            return c2();
        case Kind::kRandomProduct:
            return random_product(spec.blocks, spec.seed);
        case Kind::kRandomSparse:
            return random_sparse(spec.n, spec.m, spec.seed);
    }
    throw StateError("generator: unknown kind");
}

}  // namespace qsep::zoo

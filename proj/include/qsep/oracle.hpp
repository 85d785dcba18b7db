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

// Brute-force separability oracle on the dense amplitude vector. Shares only the
// state types with the rest of the library: a cut is separable iff the
// amplitude matrix reshaped across it has rank 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qsep/family.hpp"
#include "qsep/pure_state.hpp"

namespace qsep {

inline constexpr unsigned kMaxDenseQubits = 14;

struct DenseState {
    unsigned n;
    std::vector<ExactComplex> amplitudes;  // indexed by basis integer
};

inline DenseState dense_vector(const PureState &s) {
    if (s.n() > kMaxDenseQubits) {
        throw PreconditionError("dense expansion limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    DenseState d{s.n(), std::vector<ExactComplex>(std::size_t{1} << s.n())};
    for (const auto &t : s.terms()) {
        d.amplitudes[t.bits] = t.coeff;
    }
    return d;
}

enum class RankMode {
    kExact,
    /// Partial pivoting in double precision, pivot threshold 1e-9 relative to the
    /// largest entry. For speed comparisons only.
    kFloat,
};

namespace oracle_detail {

struct GaussInt {
    BigInt re;
    BigInt im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline GaussInt mul(const GaussInt &a, const GaussInt &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline GaussInt sub(const GaussInt &a, const GaussInt &b) { return {a.re - b.re, a.im - b.im}; }

/// a / b where b is known to divide a.
inline GaussInt exact_div(const GaussInt &a, const GaussInt &b) {
    const BigInt norm = b.re * b.re + b.im * b.im;
    const BigInt re = a.re * b.re + a.im * b.im;
    const BigInt im = a.im * b.re - a.re * b.im;
    if (re % norm != 0 || im % norm != 0) {
        throw std::logic_error("fraction-free elimination: inexact division");
    }
    return {re / norm, im / norm};
}

inline BigInt lcm(const BigInt &a, const BigInt &b) { return a / boost::multiprecision::gcd(a, b) * b; }

/// Nonzero entries of the reshaped matrix, with empty rows and columns dropped.
struct SparseReshape {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::tuple<std::size_t, std::size_t, const ExactComplex *>> entries;
};

inline SparseReshape reshape(const DenseState &d, std::uint64_t row_mask) {
    const std::uint64_t col_mask = ~row_mask & full_mask(d.n);
    std::map<std::uint64_t, std::size_t> rows;
    std::map<std::uint64_t, std::size_t> cols;
    SparseReshape out;
    for (std::uint64_t i = 0; i < d.amplitudes.size(); ++i) {
        if (d.amplitudes[i].is_zero()) {
            continue;
        }
        auto r = rows.try_emplace(extract_bits(i, row_mask), rows.size()).first->second;
        auto c = cols.try_emplace(extract_bits(i, col_mask), cols.size()).first->second;
        out.entries.emplace_back(r, c, &d.amplitudes[i]);
    }
    out.rows = rows.size();
    out.cols = cols.size();
    return out;
}

inline std::size_t bareiss_rank(std::vector<std::vector<GaussInt>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a.front().size();
    std::size_t rank = 0;
    GaussInt prev{1, 0};
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == rows) {
            continue;
        }
        std::swap(a[pivot], a[rank]);
        const GaussInt &p = a[rank][col];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                a[i][j] = exact_div(sub(mul(p, a[i][j]), mul(a[i][col], a[rank][j])), prev);
            }
            a[i][col] = {0, 0};
        }
        prev = p;
        ++rank;
    }
    return rank;
}

inline std::size_t float_rank(std::vector<std::vector<std::complex<double>>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a.front().size();
    double scale = 0;
    for (const auto &row : a) {
        for (const auto &x : row) {
            scale = std::max(scale, std::abs(x));
        }
    }
    const double threshold = 1e-9 * scale;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (std::abs(a[i][col]) > std::abs(a[pivot][col])) {
                pivot = i;
            }
        }
        if (std::abs(a[pivot][col]) <= threshold) {
            continue;
        }
        std::swap(a[pivot], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const auto f = a[i][col] / a[rank][col];
            for (std::size_t j = col; j < cols; ++j) {
                a[i][j] -= f * a[rank][j];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace oracle_detail

/// Rank of the 2^|S| x 2^(n-|S|) amplitude matrix with subset bits as the row index.
inline std::size_t schmidt_rank(const DenseState &d, const QubitSubset &subset, RankMode mode = RankMode::kExact) {
    using namespace oracle_detail;
    if (subset.n() != d.n || !subset.is_proper_nonempty()) {
        throw PreconditionError("schmidt_rank: subset must be a nonempty proper subset of the register");
    }
    const SparseReshape r = reshape(d, subset.mask());
    if (r.entries.empty()) {
        throw PreconditionError("schmidt_rank: zero vector");
    }
    if (mode == RankMode::kFloat) {
        std::vector<std::vector<std::complex<double>>> a(r.rows, std::vector<std::complex<double>>(r.cols));
        for (const auto &[i, j, z] : r.entries) {
            a[i][j] = {z->re().convert_to<double>(), z->im().convert_to<double>()};
        }
        return float_rank(std::move(a));
    }
    // Clear denominators once for the whole matrix; rank is unchanged.
    BigInt den = 1;
    for (const auto &e : r.entries) {
        const ExactComplex &z = *std::get<2>(e);
        den = lcm(den, denominator(z.re()));
        den = lcm(den, denominator(z.im()));
    }
    std::vector<std::vector<GaussInt>> a(r.rows, std::vector<GaussInt>(r.cols, GaussInt{0, 0}));
    for (const auto &[i, j, z] : r.entries) {
        a[i][j] = {numerator(z->re()) * (den / denominator(z->re())), numerator(z->im()) * (den / denominator(z->im()))};
    }
    return bareiss_rank(std::move(a));
}

/// Family label from dense data alone: constant qubit on the support, then any
/// rank-1 cut, then a Cartesian-product support test with plain set operations.
inline Family oracle_classify(const DenseState &d) {
    std::vector<std::uint64_t> support;
    for (std::uint64_t i = 0; i < d.amplitudes.size(); ++i) {
        if (!d.amplitudes[i].is_zero()) {
            support.push_back(i);
        }
    }
    if (support.empty()) {
        throw PreconditionError("oracle_classify: zero vector");
    }
    if (d.n == 1) {
        return Family::kFamily1;
    }
    for (unsigned bit = 0; bit < d.n; ++bit) {
        std::set<bool> values;
        for (auto i : support) {
            values.insert(((i >> bit) & 1u) != 0);
        }
        if (values.size() == 1) {
            return Family::kFamily1;
        }
    }

    const std::uint64_t full = full_mask(d.n);
    const std::uint64_t top = std::uint64_t{1} << (d.n - 1);
    std::vector<std::uint64_t> cuts;
    for (std::uint64_t rest = 0; rest < top; ++rest) {
        if ((top | rest) != full) {
            cuts.push_back(top | rest);
        }
    }
    for (auto mask : cuts) {
        if (schmidt_rank(d, QubitSubset(mask, d.n)) == 1) {
            return Family::kFamily2;
        }
    }
    const std::set<std::uint64_t> support_set(support.begin(), support.end());
    for (auto mask : cuts) {
        std::set<std::uint64_t> left;
        std::set<std::uint64_t> right;
        for (auto i : support) {
            left.insert(i & mask);
            right.insert(i & ~mask & full);
        }
        if (left.size() < 2 || right.size() < 2) {
            continue;
        }
        std::set<std::uint64_t> product;
        for (auto l : left) {
            for (auto r : right) {
                product.insert(l | r);
            }
        }
        if (product == support_set) {
            return Family::kFamily4;
        }
    }
    return Family::kFamily3;
}

}  // namespace qsep

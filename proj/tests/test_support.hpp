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

// Brute-force helpers shared by the test suites. Nothing here calls into the
// bsm / coeff / separability code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qsep/pure_state.hpp"

namespace qsep::testing {

inline PureState state(unsigned n, std::initializer_list<std::pair<const char *, ExactComplex>> terms) {
    std::vector<Term> out;
    for (const auto &[bits, c] : terms) {
        out.push_back({BasisLabel::parse(bits).bits(), c});
    }
    return {n, std::move(out)};
}

/// (1/2)(|000> + |010> + |101> + |111>).
inline PureState worked_example() {
    const ExactComplex half(Rational(1, 2));
    return state(3, {{"000", half}, {"010", half}, {"101", half}, {"111", half}});
}

/// Projection of label onto a list of qubits, as a string in the given order.
inline std::string project(const BasisLabel &b, const std::vector<unsigned> &qubits) {
    std::string s;
    for (unsigned q : qubits) {
        s += b.bit(q) ? '1' : '0';
    }
    return s;
}

struct BruteSplit {
    std::set<std::string> left;
    std::set<std::string> right;
    bool cartesian = false;
};

/// Support-level Cartesian test by explicit string enumeration.
inline BruteSplit brute_cartesian(const PureState &s, const std::vector<unsigned> &left_qubits) {
    std::vector<unsigned> right_qubits;
    for (unsigned q = 1; q <= s.n(); ++q) {
        if (std::find(left_qubits.begin(), left_qubits.end(), q) == left_qubits.end()) {
            right_qubits.push_back(q);
        }
    }
    BruteSplit out;
    std::set<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < s.m(); ++i) {
        auto l = project(s.label(i), left_qubits);
        auto r = project(s.label(i), right_qubits);
        out.left.insert(l);
        out.right.insert(r);
        pairs.insert({l, r});
    }
    out.cartesian = out.left.size() > 1 && out.right.size() > 1 && pairs.size() == out.left.size() * out.right.size();
    return out;
}

/// Rank by textbook Gauss-Jordan over exact complex rationals.
inline std::size_t naive_rank(std::vector<std::vector<ExactComplex>> a) {
    std::size_t rank = 0;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c].is_zero()) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[rank]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][c].is_zero()) {
                continue;
            }
            const ExactComplex f = a[i][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j) {
                a[i][j] -= f * a[rank][j];
            }
        }
        ++rank;
    }
    return rank;
}

/// Full 2^|S| x 2^(n-|S|) reshape by explicit bit loops over every index.
inline std::vector<std::vector<ExactComplex>> naive_reshape(const PureState &s, const std::vector<unsigned> &rows_q) {
    const unsigned n = s.n();
    std::vector<unsigned> cols_q;
    for (unsigned q = 1; q <= n; ++q) {
        if (std::find(rows_q.begin(), rows_q.end(), q) == rows_q.end()) {
            cols_q.push_back(q);
        }
    }
    std::vector<std::vector<ExactComplex>> a(std::size_t{1} << rows_q.size(),
                                             std::vector<ExactComplex>(std::size_t{1} << cols_q.size()));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        std::size_t r = 0;
        std::size_t c = 0;
        for (unsigned q : rows_q) {
            r = (r << 1) | ((x >> (n - q)) & 1u);
        }
        for (unsigned q : cols_q) {
            c = (c << 1) | ((x >> (n - q)) & 1u);
        }
        a[r][c] = s.amplitude(x);
    }
    return a;
}

}  // namespace qsep::testing

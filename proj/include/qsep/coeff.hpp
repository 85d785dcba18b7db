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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsep/bsm.hpp"
#include "qsep/exact.hpp"

namespace qsep {

/// g x h matrix of nonzero coefficients, row-major. Rows follow the left
/// patterns of a canonical form and columns follow the right patterns.
class CoefficientMatrix {
  public:
    CoefficientMatrix(std::size_t g, std::size_t h, std::vector<ExactComplex> entries,
                      std::optional<CanonicalForm> provenance = std::nullopt)
        : g_(g), h_(h), entries_(std::move(entries)), provenance_(std::move(provenance)) {
        if (g < 2 || h < 2) {
            throw StateError("coefficient matrix must be at least 2x2");
        }
        if (entries_.size() != g * h) {
            throw StateError("coefficient matrix entry count does not match " + std::to_string(g) + "x" +
                             std::to_string(h));
        }
        for (const auto &e : entries_) {
            if (e.is_zero()) {
                throw StateError("coefficient matrix entries must be nonzero");
            }
        }
    }

    std::size_t g() const { return g_; }
    std::size_t h() const { return h_; }
    const ExactComplex &at(std::size_t s, std::size_t t) const { return entries_[s * h_ + t]; }
    const std::vector<ExactComplex> &entries() const { return entries_; }
    const std::optional<CanonicalForm> &provenance() const { return provenance_; }

    CoefficientMatrix scaled(const ExactComplex &c) const {
        std::vector<ExactComplex> e = entries_;
        for (auto &x : e) {
            x *= c;
        }
        return {g_, h_, std::move(e), provenance_};
    }

  private:
    std::size_t g_;
    std::size_t h_;
    std::vector<ExactComplex> entries_;
    std::optional<CanonicalForm> provenance_;
};

/// Amplitudes with alpha^T * beta equal to the source matrix.
struct RankOneFactors {
    std::vector<ExactComplex> alpha;
    std::vector<ExactComplex> beta;
};

/// Fills the g x h grid of `cf` with the coefficients of `s`.
inline CoefficientMatrix coefficient_matrix(const PureState &s, const CanonicalForm &cf) {
    const std::size_t g = cf.g();
    const std::size_t h = cf.h();
    if (cf.subset.n() != s.n() || cf.index_map.size() != g * h || g * h != s.m()) {
        throw PreconditionError("canonical form does not belong to this state");
    }
    std::vector<ExactComplex> entries;
    entries.reserve(g * h);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < h; ++j) {
            const std::size_t idx = cf.term_index(i, j);
            if (idx >= s.m() || s.terms()[idx].bits != cf.label(i, j)) {
                throw PreconditionError("stale canonical form: index map disagrees with the state");
            }
            entries.push_back(s.terms()[idx].coeff);
        }
    }
    return {g, h, std::move(entries), cf};
}

/// Every 2x2 minor through entry (1,1) vanishes. With all entries nonzero this
/// is equivalent to every pair of rows (and of columns) being proportional.
inline bool is_rank_one(const CoefficientMatrix &a) {
    const ExactComplex &corner = a.at(0, 0);
    for (std::size_t s = 1; s < a.g(); ++s) {
        const ExactComplex &first = a.at(s, 0);
        for (std::size_t t = 1; t < a.h(); ++t) {
            if (a.at(s, t) * corner != first * a.at(0, t)) {
                return false;
            }
        }
    }
    return true;
}

/// Rows i and j are proportional when every 2x2 minor they form vanishes.
inline bool rows_proportional(const CoefficientMatrix &a, std::size_t i, std::size_t j) {
    for (std::size_t t = 0; t < a.h(); ++t) {
        for (std::size_t u = t + 1; u < a.h(); ++u) {
            if (a.at(i, t) * a.at(j, u) != a.at(i, u) * a.at(j, t)) {
                return false;
            }
        }
    }
    return true;
}

inline bool columns_proportional(const CoefficientMatrix &a, std::size_t t, std::size_t u) {
    for (std::size_t i = 0; i < a.g(); ++i) {
        for (std::size_t j = i + 1; j < a.g(); ++j) {
            if (a.at(i, t) * a.at(j, u) != a.at(j, t) * a.at(i, u)) {
                return false;
            }
        }
    }
    return true;
}

inline bool all_rows_proportional(const CoefficientMatrix &a) {
    for (std::size_t i = 0; i < a.g(); ++i) {
        for (std::size_t j = i + 1; j < a.g(); ++j) {
            if (!rows_proportional(a, i, j)) {
                return false;
            }
        }
    }
    return true;
}

inline bool all_columns_proportional(const CoefficientMatrix &a) {
    for (std::size_t t = 0; t < a.h(); ++t) {
        for (std::size_t u = t + 1; u < a.h(); ++u) {
            if (!columns_proportional(a, t, u)) {
                return false;
            }
        }
    }
    return true;
}

/// Gauge alpha[0] = 1, beta = first row, alpha[s] = a(s,0) / a(0,0).
inline RankOneFactors solve_rank_one(const CoefficientMatrix &a) {
    if (!is_rank_one(a)) {
        throw PreconditionError("solve_rank_one: matrix is not rank one");
    }
    RankOneFactors f;
    f.alpha.reserve(a.g());
    f.alpha.emplace_back(1);
    for (std::size_t s = 1; s < a.g(); ++s) {
        f.alpha.push_back(a.at(s, 0) / a.at(0, 0));
    }
    f.beta.reserve(a.h());
    for (std::size_t t = 0; t < a.h(); ++t) {
        f.beta.push_back(a.at(0, t));
    }
    return f;
}

}  // namespace qsep

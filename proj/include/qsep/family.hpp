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

namespace qsep {

/// Family 1: a qubit is fixed (|r>_i |w>). Family 2: separable through a
/// rank-one canonical form. Family 3: no canonical form exists, entangled for
/// any coefficients. Family 4: canonical forms exist, none rank-one.
///
/// Families are not SLOCC classes: Bell and C2 are SLOCC-equivalent but fall
/// in families 3 and 4.
enum class Family { kFamily1 = 1, kFamily2 = 2, kFamily3 = 3, kFamily4 = 4 };

constexpr bool is_separable(Family f) { return f == Family::kFamily1 || f == Family::kFamily2; }
constexpr int family_number(Family f) { return static_cast<int>(f); }

}  // namespace qsep

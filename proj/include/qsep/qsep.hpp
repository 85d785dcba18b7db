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

#include "qsep/bsm.hpp"           // IWYU pragma: export
#include "qsep/coeff.hpp"         // IWYU pragma: export
#include "qsep/exact.hpp"         // IWYU pragma: export
#include "qsep/family.hpp"        // IWYU pragma: export
#include "qsep/oracle.hpp"        // IWYU pragma: export
#include "qsep/pure_state.hpp"    // IWYU pragma: export
#include "qsep/separability.hpp"  // IWYU pragma: export
#include "qsep/state_io.hpp"      // IWYU pragma: export
#include "qsep/zoo.hpp"           // IWYU pragma: export

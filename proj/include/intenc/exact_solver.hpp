// Copyright 2026 The intenc Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include "intenc/model.hpp"

namespace intenc {

inline constexpr std::size_t kMaxExactSpins = 30;
inline constexpr double kDefaultTieTolerance = 1e-9;

/// Largest number of grid points brute_force_uiqp will scan.
inline constexpr std::size_t kMaxUiqpGrid = 2'000'000;

struct GroundStateResult {
    double energy = 0.0;
    std::vector<SpinVector> states;  // lexicographic, -1 before +1
    std::size_t degeneracy = 0;
    double tolerance = kDefaultTieTolerance;
};

/// Exhaustive minimization over all 2^n spin vectors.
///
/// States are visited in Gray-code order with incrementally maintained local
/// fields, so each step costs O(n). Candidates near the running minimum are
/// re-evaluated directly at the end; the reported energy and every state
/// within `tol` of it come from direct evaluation and do not depend on the
/// accumulated rounding of the sweep.
/// Throws CapacityError above kMaxExactSpins spins.
GroundStateResult ground_states(const IsingModel& m, double tol = kDefaultTieTolerance);

struct UiqpOptimum {
    double energy = 0.0;
    std::vector<IntegerVector> argmin;  // lexicographic
};

/// Full scan of the integer box. Throws CapacityError when prod(kappa_i + 1)
/// exceeds kMaxUiqpGrid.
UiqpOptimum brute_force_uiqp(const UiqpProblem& p, double tol = kDefaultTieTolerance);

}  // namespace intenc

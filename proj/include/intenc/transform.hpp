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
#include <span>

#include "intenc/encodings.hpp"
#include "intenc/model.hpp"

namespace intenc {

/// Substitutes x = (kappa + C s) / 2 into the problem.
///
/// Spin s_j of variable i gets the field (1/2) [Q kappa + q]_i c_j; two spins
/// of the same variable couple with (1/2) Q_ii c_k c_l, spins of different
/// variables with (1/2) Q_ij c_k c_l. Exact zeros are not stored.
/// Throws EncodingMismatchError unless sum(c^{x_i}) == kappa_i for every i.
IsingModel uiqp_to_ising(const UiqpProblem& p, const IntEncoding& enc);

/// Substitutes x = C y. QB = C^t Q C with the diagonal of each variable block
/// replaced by Q_ii c_j^2 + q_i c_j, so y^t QB y == f(C y).
QuboModel uiqp_to_qubo(const UiqpProblem& p, const IntEncoding& enc);

/// x_i = (kappa_i + sum_j c_j s_j) / 2 with kappa_i = sum_j c_j.
IntegerVector decode_spins(const IntEncoding& enc, std::span<const std::int8_t> s);

/// x = C y.
IntegerVector decode_binaries(const IntEncoding& enc, std::span<const std::uint8_t> y);

/// Divides h, J and the offset by max |J_ij| (by max |h_i| when there are no
/// couplers). Models with neither are returned unchanged.
IsingModel scale_ising(const IsingModel& m);

/// Magnitude ranges of the stored coefficients of a model.
///
/// For Ising models "field" refers to h and "coupler" to J; for QUBO models
/// they are the diagonal (linear) and strict upper triangle (quadratic) of QB.
/// Ratios are min/max over nonzero entries; an empty category reports a ratio
/// of 1 and sets the matching *_empty flag.
struct TransformReport {
    double min_field = 0.0;
    double max_field = 0.0;
    double min_coupler = 0.0;
    double max_coupler = 0.0;
    double ratio_field = 1.0;
    double ratio_coupler = 1.0;
    bool field_empty = true;
    bool coupler_empty = true;
    std::size_t num_variables = 0;
    std::size_t num_couplers = 0;
};

TransformReport ising_ratios(const IsingModel& m);
TransformReport qubo_ratios(const QuboModel& m);

/// True when some |h_i| exceeds `limit` (hardware field range).
bool field_exceeds(const IsingModel& m, double limit);

}  // namespace intenc

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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intenc/model.hpp"

namespace intenc {

/// Required lower bounds on min|coefficient| / max|coefficient| for the linear
/// (local field) and quadratic (coupler) terms of the encoded model.
struct PrecisionConfig {
    double epsilon_l = 0.01;
    double epsilon_c = 0.01;

    /// Throws DomainError unless both thresholds lie in (0, 1].
    void validate() const;
};

/// One iteration of the greedy pair loop: the most violated pair (i, j), the
/// width estimates for decrementing either side (absent when that side is
/// already 1) and the variable that was decremented.
struct PairStep {
    std::size_t i = 0;
    std::size_t j = 0;
    double violation = 0.0;
    std::optional<double> xi_i;
    std::optional<double> xi_j;
    std::size_t decremented = 0;
};

enum class LinearBranch {
    raise_min,           // decremented the variable holding the smallest linear term
    lower_max_to_vertex, // moved mu below the vertex of the largest linear term
    lower_max,           // decremented the variable holding the largest linear term
};

/// One iteration of the linear-term adjustment for QUBO targets.
struct LinearStep {
    LinearBranch branch = LinearBranch::lower_max;
    std::size_t index = 0;
    std::int64_t mu_before = 0;
    std::int64_t mu_after = 0;
    double min_value = 0.0;
    double max_value = 0.0;
};

struct MuResult {
    IntegerVector mu;
    IntegerVector initial_mu;
    std::optional<double> m_l;  // absent when no linear term is present
    std::optional<double> m_c;  // absent when no quadratic term is present
    std::vector<PairStep> trace;
    std::vector<LinearStep> linear_trace;
    std::vector<std::string> warnings;
};

struct MinMagnitudes {
    double m_l = 0.0;
    double m_c = 0.0;
};

/// m_l = min_i |[Q kappa + q]_i| and m_c = min over |Q_ii| and |Q_ij| (i < j),
/// both over nonzero magnitudes only. Throws StructuralError when either set
/// of candidates is empty.
MinMagnitudes compute_ml_mc_spin(const UiqpProblem& p);

/// Per-variable coefficient bounds for the spin (Ising) target.
///
/// Starts from mu_i = floor(min{ m_l / (|[Q kappa + q]_i| eps_l),
/// sqrt(m_c / (|Q_ii| eps_c)) }) and, while some pair violates
/// mu_i mu_j <= m_c / (|Q_ij| eps_c), decrements one side of the worst pair,
/// choosing the side whose width estimate kappa_i/mu_i + kappa_j/mu_j is lower.
/// Problems without quadratic terms use the linear closed form.
///
/// Missing terms impose no bound; a variable with no bound at all gets
/// mu_i = kappa_i. Bounds that floor to 0 are raised to 1 with a warning.
/// Throws InfeasiblePrecisionError when a violated pair has mu_i = mu_j = 1.
MuResult find_mu_spin(const UiqpProblem& p, const PrecisionConfig& cfg);

/// mu_i = floor(m_l / (|q_i| eps_l)) with m_l = min_i |q_i| over nonzero q_i.
/// Zero entries impose no bound and receive kappa_i, which must then be
/// supplied. Throws StructuralError when every q_i is zero.
MuResult find_mu_linear_only(std::span<const double> q, double epsilon_l,
                             std::span<const std::int64_t> kappa = {});

/// Common bound for all variables: min_i mu_i.
std::int64_t uniform_mu(std::span<const std::int64_t> mu);

/// Quadratic-term bounds for the binary (QUBO) target: start from
/// floor(sqrt(m_c / (|Q_ii| eps_c))) and run the same pair loop as
/// find_mu_spin. Throws StructuralError when Q has no nonzero entry.
MuResult find_mu_qubo_quadratic(const UiqpProblem& p, const PrecisionConfig& cfg);

/// True when every linear QUBO coefficient Q_ii c^2 + q_i c is smallest at
/// c = 1 and grows with c, i.e. -q_i / Q_ii < 1 for every i.
bool qubo_linear_monotone(const UiqpProblem& p);

/// Bounds for the monotone case, where one pass fixes both ratios:
/// mu_i = floor(min{ mu~_i, sqrt(m_c / (|Q_ii| eps_c)) }) with
///   mu~_i = (-sgn(q_i Q_ii)|q_i| + sqrt(q_i^2 + 4 |Q_ii| m_l / eps_l)) / (2 |Q_ii|)
/// and m_l = min_i |Q_ii + q_i|, followed by the pair loop.
MuResult find_mu_qubo_monotone(const UiqpProblem& p, const PrecisionConfig& cfg);

enum class MinClass { none, at_two, at_one, near_root };
enum class MaxClass { none, at_mu, near_vertex };

/// Where the smallest and largest nonzero |Q_ii c^2 + q_i c| over c in
/// {1, ..., mu_i} are attained, per variable.
///
///   at_two      -q_i/Q_ii == 1: the term vanishes at c = 1, smallest at c = 2
///   at_one      smallest at c = 1 (same signs, root below 1, mu below the
///               root, or an integer root above 1)
///   near_root   smallest at floor or ceil of the non-integer root -q_i/Q_ii
///   at_mu       largest at c = mu_i
///   near_vertex largest at mu_i or at round(-q_i / (2 Q_ii))
///
/// Variables with Q_ii == 0 fall in at_one/at_mu. A variable without any
/// nonzero linear term in range is `none` in both.
struct IndexClasses {
    std::vector<MinClass> min_class;
    std::vector<MaxClass> max_class;
};

IndexClasses classify_indices(const UiqpProblem& p, std::span<const std::int64_t> mu);

/// (value, achieving coefficient, variable) triple.
struct LinearExtreme {
    double value = 0.0;
    std::int64_t at = 0;
    std::size_t index = 0;

    bool operator==(const LinearExtreme&) const = default;
};

struct LinearExtremes {
    std::vector<LinearExtreme> min_terms;  // v^m, one per classified variable
    std::vector<LinearExtreme> max_terms;  // v^M
};

LinearExtremes build_vm_vM(const UiqpProblem& p, std::span<const std::int64_t> mu,
                           const IndexClasses& classes);

/// Update applied when the smallest linear term sits near a non-integer root.
enum class LinearAdjustVariant {
    decrement,        // mu_k <- mu_k - 1
    below_minimizer,  // mu_k <- (coefficient attaining the minimum) - 1
};

/// Shrinks mu until the smallest and largest linear QUBO terms over
/// c in {1..mu_i} have ratio >= eps_l. Each step either lowers the mu of the
/// variable holding the smallest term (when that moves the smaller term up
/// more than lowering the largest would) or lowers the mu of the variable
/// holding the largest term. `start` is typically find_mu_qubo_quadratic's
/// result; its trace is carried over.
/// Throws InfeasiblePrecisionError if some mu would drop below 1.
MuResult adjust_mu_for_linear(const UiqpProblem& p, MuResult start, const PrecisionConfig& cfg,
                              LinearAdjustVariant variant = LinearAdjustVariant::decrement);

/// Full QUBO-target procedure: the monotone fast path when it applies,
/// otherwise the quadratic pass followed by the linear adjustment.
MuResult find_mu_qubo(const UiqpProblem& p, const PrecisionConfig& cfg,
                      LinearAdjustVariant variant = LinearAdjustVariant::decrement);

}  // namespace intenc

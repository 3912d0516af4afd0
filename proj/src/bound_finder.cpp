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

#include "intenc/bound_finder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "intenc/exceptions.hpp"

namespace intenc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bounds are ratios of problem data and thresholds such as 0.01, which are not
// exact in binary; a bound that is an integer up to rounding must floor to
// that integer.
double snap(double x) {
    if (!std::isfinite(x)) return x;
    const double r = std::round(x);
    return std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x)) ? r : x;
}

bool near_integer(double x) { return snap(x) == std::round(x); }

// floor of a bound, capped at `cap`; infinite bounds give `cap`
std::int64_t floor_bound(double x, std::int64_t cap) {
    const double s = snap(x);
    if (!(s < static_cast<double>(cap))) return cap;
    return static_cast<std::int64_t>(std::floor(s));
}

int sgn(double v) { return (v > 0) - (v < 0); }

std::vector<double> local_fields(const UiqpProblem& p) {
    const std::size_t n = p.num_variables();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = p.q()[i];
        for (std::size_t k = 0; k < n; ++k) acc += p.Q()(i, k) * static_cast<double>(p.kappa()[k]);
        v[i] = acc;
    }
    return v;
}

std::optional<double> min_nonzero_magnitude(std::span<const double> values) {
    std::optional<double> best;
    for (double v : values) {
        const double a = std::abs(v);
        if (a != 0.0 && (!best || a < *best)) best = a;
    }
    return best;
}

std::optional<double> min_quadratic_magnitude(const UiqpProblem& p) {
    std::optional<double> best;
    const auto& Q = p.Q();
    for (std::size_t i = 0; i < Q.size(); ++i) {
        for (std::size_t j = i; j < Q.size(); ++j) {
            const double a = std::abs(Q(i, j));
            if (a != 0.0 && (!best || a < *best)) best = a;
        }
    }
    return best;
}

// Raises bounds below 1 to 1, recording a warning for each.
void clamp_to_one(IntegerVector& mu, std::vector<std::string>& warnings) {
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] < 1) {
            warnings.push_back("mu[" + std::to_string(i) +
                               "] bound is below 1; clamped to 1 (the precision target cannot "
                               "be met for this variable)");
            mu[i] = 1;
        }
    }
}

// Greedy loop enforcing mu_i mu_j <= m_c / (|Q_ij| eps_c) over all i < j.
void enforce_pair_bounds(const UiqpProblem& p, double m_c, double eps_c, IntegerVector& mu,
                         std::vector<PairStep>& trace) {
    const std::size_t n = p.num_variables();
    const auto& kappa = p.kappa();

    struct Pair {
        std::size_t i, j;
        double bound;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = std::abs(p.Q()(i, j));
            if (a != 0.0) pairs.push_back({i, j, snap(m_c / (a * eps_c))});
        }
    }

    for (;;) {
        const Pair* worst = nullptr;
        double worst_violation = 0.0;
        for (const Pair& pr : pairs) {
            const double v =
                    static_cast<double>(mu[pr.i]) * static_cast<double>(mu[pr.j]) - pr.bound;
            // strict comparison keeps the lexicographically lowest pair on ties
            if (v > worst_violation) {
                worst_violation = v;
                worst = &pr;
            }
        }
        if (worst == nullptr) return;

        const std::size_t i = worst->i;
        const std::size_t j = worst->j;
        if (mu[i] == 1 && mu[j] == 1) {
            throw InfeasiblePrecisionError(
                    "coupler precision cannot be met: pair (" + std::to_string(i) + ", " +
                    std::to_string(j) + ") violates mu_i * mu_j <= " +
                    std::to_string(worst->bound) + " with mu_i = mu_j = 1");
        }

        const double ki = static_cast<double>(kappa[i]);
        const double kj = static_cast<double>(kappa[j]);
        const double mi = static_cast<double>(mu[i]);
        const double mj = static_cast<double>(mu[j]);
        PairStep step{i, j, worst_violation, std::nullopt, std::nullopt, i};
        if (mu[i] >= 2) step.xi_i = ki / (mi - 1.0) + kj / mj;
        if (mu[j] >= 2) step.xi_j = ki / mi + kj / (mj - 1.0);

        if (!step.xi_j) {
            step.decremented = i;
        } else if (!step.xi_i) {
            step.decremented = j;
        } else {
            step.decremented = (*step.xi_i <= *step.xi_j) ? i : j;
        }
        --mu[step.decremented];
        trace.push_back(step);
    }
}

std::int64_t round_half_away(double x) { return static_cast<std::int64_t>(std::round(x)); }

double linear_term(double Qii, double qi, std::int64_t c) {
    const double x = static_cast<double>(c);
    return std::abs(Qii * x * x + qi * x);
}

}  // namespace

void PrecisionConfig::validate() const {
    auto check = [](double e, const char* name) {
        if (!(e > 0.0 && e <= 1.0)) {
            throw DomainError(std::string(name) + " must lie in (0, 1], got " + std::to_string(e));
        }
    };
    check(epsilon_l, "epsilon_l");
    check(epsilon_c, "epsilon_c");
}

MinMagnitudes compute_ml_mc_spin(const UiqpProblem& p) {
    const std::vector<double> v = local_fields(p);
    const auto m_l = min_nonzero_magnitude(v);
    if (!m_l) {
        throw StructuralError("every local field [Q kappa + q]_i is zero; no linear terms");
    }
    const auto m_c = min_quadratic_magnitude(p);
    if (!m_c) throw StructuralError("Q is zero; no quadratic terms");
    return {*m_l, *m_c};
}

MuResult find_mu_linear_only(std::span<const double> q, double epsilon_l,
                             std::span<const std::int64_t> kappa) {
    if (!(epsilon_l > 0.0 && epsilon_l <= 1.0)) {
        throw DomainError("epsilon_l must lie in (0, 1]");
    }
    if (!kappa.empty() && kappa.size() != q.size()) {
        throw ShapeError("kappa must have one entry per variable");
    }
    const auto m_l = min_nonzero_magnitude(q);
    if (!m_l) throw StructuralError("objective is constant: every q_i is zero");

    MuResult res;
    res.m_l = m_l;
    res.mu.resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0.0) {
            if (kappa.empty()) {
                throw DomainError("q[" + std::to_string(i) +
                                  "] is zero; kappa is required to bound it");
            }
            res.mu[i] = kappa[i];
            continue;
        }
        res.mu[i] = floor_bound(*m_l / (std::abs(q[i]) * epsilon_l),
                                std::numeric_limits<std::int64_t>::max() / 2);
    }
    clamp_to_one(res.mu, res.warnings);
    res.initial_mu = res.mu;
    return res;
}

std::int64_t uniform_mu(std::span<const std::int64_t> mu) {
    if (mu.empty()) throw DomainError("uniform_mu needs at least one entry");
    return *std::min_element(mu.begin(), mu.end());
}

MuResult find_mu_spin(const UiqpProblem& p, const PrecisionConfig& cfg) {
    cfg.validate();
    const std::size_t n = p.num_variables();
    const std::vector<double> v = local_fields(p);

    MuResult res;
    res.m_l = min_nonzero_magnitude(v);
    res.m_c = min_quadratic_magnitude(p);
    if (!res.m_l && !res.m_c) {
        throw StructuralError("objective is constant: no linear or quadratic terms");
    }

    res.mu.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double bound = kInf;
        if (res.m_l && v[i] != 0.0) {
            bound = std::min(bound, *res.m_l / (std::abs(v[i]) * cfg.epsilon_l));
        }
        const double qii = std::abs(p.Q()(i, i));
        if (res.m_c && qii != 0.0) {
            bound = std::min(bound, std::sqrt(*res.m_c / (qii * cfg.epsilon_c)));
        }
        res.mu[i] = floor_bound(bound, p.kappa()[i]);
    }
    clamp_to_one(res.mu, res.warnings);
    res.initial_mu = res.mu;

    if (res.m_c) enforce_pair_bounds(p, *res.m_c, cfg.epsilon_c, res.mu, res.trace);
    return res;
}

MuResult find_mu_qubo_quadratic(const UiqpProblem& p, const PrecisionConfig& cfg) {
    cfg.validate();
    MuResult res;
    res.m_c = min_quadratic_magnitude(p);
    if (!res.m_c) throw StructuralError("Q is zero; no quadratic terms");

    const std::size_t n = p.num_variables();
    res.mu.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double qii = std::abs(p.Q()(i, i));
        const double bound = qii != 0.0 ? std::sqrt(*res.m_c / (qii * cfg.epsilon_c)) : kInf;
        res.mu[i] = floor_bound(bound, p.kappa()[i]);
    }
    clamp_to_one(res.mu, res.warnings);
    res.initial_mu = res.mu;
    enforce_pair_bounds(p, *res.m_c, cfg.epsilon_c, res.mu, res.trace);
    return res;
}

bool qubo_linear_monotone(const UiqpProblem& p) {
    for (std::size_t i = 0; i < p.num_variables(); ++i) {
        const double Qii = p.Q()(i, i);
        if (Qii == 0.0) continue;
        if (snap(-p.q()[i] / Qii) >= 1.0) return false;
    }
    return true;
}

MuResult find_mu_qubo_monotone(const UiqpProblem& p, const PrecisionConfig& cfg) {
    cfg.validate();
    const std::size_t n = p.num_variables();

    std::vector<double> at_one(n);  // linear term at c = 1
    for (std::size_t i = 0; i < n; ++i) at_one[i] = p.Q()(i, i) + p.q()[i];

    MuResult res;
    res.m_l = min_nonzero_magnitude(at_one);
    res.m_c = min_quadratic_magnitude(p);
    if (!res.m_l && !res.m_c) {
        throw StructuralError("objective is constant: no linear or quadratic terms");
    }

    res.mu.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double Qii = std::abs(p.Q()(i, i));
        const double qi = std::abs(p.q()[i]);
        double bound = kInf;
        if (res.m_l) {
            const double target = *res.m_l / cfg.epsilon_l;
            if (Qii != 0.0) {
                const double s = static_cast<double>(sgn(p.q()[i] * p.Q()(i, i)));
                bound = (-s * qi + std::sqrt(qi * qi + 4.0 * Qii * target)) / (2.0 * Qii);
            } else if (qi != 0.0) {
                bound = target / qi;
            }
        }
        if (res.m_c && Qii != 0.0) {
            bound = std::min(bound, std::sqrt(*res.m_c / (Qii * cfg.epsilon_c)));
        }
        res.mu[i] = floor_bound(bound, p.kappa()[i]);
    }
    clamp_to_one(res.mu, res.warnings);
    res.initial_mu = res.mu;
    if (res.m_c) enforce_pair_bounds(p, *res.m_c, cfg.epsilon_c, res.mu, res.trace);
    return res;
}

IndexClasses classify_indices(const UiqpProblem& p, std::span<const std::int64_t> mu) {
    const std::size_t n = p.num_variables();
    if (mu.size() != n) throw ShapeError("mu must have one entry per variable");

    IndexClasses out;
    out.min_class.assign(n, MinClass::none);
    out.max_class.assign(n, MaxClass::none);
    for (std::size_t i = 0; i < n; ++i) {
        if (mu[i] < 1) throw DomainError("mu entries must be >= 1");
        const double Qii = p.Q()(i, i);
        const double qi = p.q()[i];
        if (Qii == 0.0) {
            if (qi != 0.0) {
                out.min_class[i] = MinClass::at_one;
                out.max_class[i] = MaxClass::at_mu;
            }
            continue;
        }
        const double root = snap(-qi / Qii);
        if (root == 1.0) {
            // the term vanishes at c = 1, so with mu = 1 nothing nonzero remains
            if (mu[i] < 2) continue;
            out.min_class[i] = MinClass::at_two;
        } else if (root < 1.0) {
            out.min_class[i] = MinClass::at_one;
        } else if (mu[i] < static_cast<std::int64_t>(std::floor(root)) || near_integer(root)) {
            out.min_class[i] = MinClass::at_one;
        } else {
            out.min_class[i] = MinClass::near_root;
        }

        const double vertex = root / 2.0;
        if (vertex < 0.5 || mu[i] <= round_half_away(vertex)) {
            out.max_class[i] = MaxClass::at_mu;
        } else {
            out.max_class[i] = MaxClass::near_vertex;
        }
    }
    return out;
}

LinearExtremes build_vm_vM(const UiqpProblem& p, std::span<const std::int64_t> mu,
                           const IndexClasses& classes) {
    const std::size_t n = p.num_variables();
    LinearExtremes out;
    for (std::size_t i = 0; i < n; ++i) {
        const double Qii = p.Q()(i, i);
        const double qi = p.q()[i];
        switch (classes.min_class[i]) {
            case MinClass::none:
                break;
            case MinClass::at_two:
                out.min_terms.push_back({std::abs(4.0 * Qii + 2.0 * qi), 2, i});
                break;
            case MinClass::at_one:
                out.min_terms.push_back({std::abs(Qii + qi), 1, i});
                break;
            case MinClass::near_root: {
                const double root = snap(-qi / Qii);
                const auto lo = static_cast<std::int64_t>(std::floor(root));
                LinearExtreme best{linear_term(Qii, qi, lo), lo, i};
                if (lo + 1 <= mu[i]) {
                    const double v = linear_term(Qii, qi, lo + 1);
                    if (v < best.value) best = {v, lo + 1, i};
                }
                out.min_terms.push_back(best);
                break;
            }
        }
        switch (classes.max_class[i]) {
            case MaxClass::none:
                break;
            case MaxClass::at_mu:
                out.max_terms.push_back({linear_term(Qii, qi, mu[i]), mu[i], i});
                break;
            case MaxClass::near_vertex: {
                const std::int64_t v = round_half_away(snap(-qi / Qii) / 2.0);
                LinearExtreme best{linear_term(Qii, qi, v), v, i};
                const double at_mu = linear_term(Qii, qi, mu[i]);
                if (at_mu > best.value) best = {at_mu, mu[i], i};
                out.max_terms.push_back(best);
                break;
            }
        }
    }
    return out;
}

MuResult adjust_mu_for_linear(const UiqpProblem& p, MuResult start, const PrecisionConfig& cfg,
                              LinearAdjustVariant variant) {
    cfg.validate();
    MuResult res = std::move(start);
    IntegerVector& mu = res.mu;
    if (mu.size() != p.num_variables()) throw ShapeError("mu must have one entry per variable");

    for (;;) {
        const IndexClasses classes = classify_indices(p, mu);
        LinearExtremes ext = build_vm_vM(p, mu, classes);
        if (ext.min_terms.empty()) return res;

        auto& lo = ext.min_terms;
        auto& hi = ext.max_terms;
        std::sort(lo.begin(), lo.end(), [](const LinearExtreme& a, const LinearExtreme& b) {
            return a.value != b.value ? a.value < b.value : a.index < b.index;
        });
        std::sort(hi.begin(), hi.end(), [](const LinearExtreme& a, const LinearExtreme& b) {
            return a.value != b.value ? a.value > b.value : a.index < b.index;
        });
        const LinearExtreme& m1 = lo.front();
        const LinearExtreme& M1 = hi.front();
        res.m_l = m1.value;
        if (m1.value / M1.value >= cfg.epsilon_l) return res;

        // with a single variable there is no runner-up; raising the minimum is
        // then unbounded by other variables and the maximum stays put
        const double m2 = lo.size() > 1 ? lo[1].value : kInf;
        const double M2 = hi.size() > 1 ? hi[1].value : M1.value;

        std::optional<std::int64_t> raise_to;
        if (classes.min_class[m1.index] == MinClass::near_root) {
            const std::int64_t cur = mu[m1.index];
            const std::int64_t next =
                    variant == LinearAdjustVariant::decrement ? cur - 1 : m1.at - 1;
            if (next >= 1) raise_to = next;
        }

        const std::size_t kmax = M1.index;
        const std::int64_t vertex =
                classes.max_class[kmax] == MaxClass::near_vertex
                        ? round_half_away(snap(-p.q()[kmax] / p.Q()(kmax, kmax)) / 2.0)
                        : 0;
        const bool to_vertex = classes.max_class[kmax] == MaxClass::near_vertex &&
                               M1.at == vertex && vertex < mu[kmax];
        std::optional<std::int64_t> lower_to;
        if (to_vertex) {
            // vertex >= 1 here; mu = 1 keeps the variable representable
            lower_to = std::max<std::int64_t>(1, vertex - 1);
        } else if (mu[kmax] >= 2) {
            lower_to = mu[kmax] - 1;
        }

        const bool prefer_raise = raise_to && m2 * M2 > m1.value * M1.value;
        LinearStep step;
        step.min_value = m1.value;
        step.max_value = M1.value;
        if ((prefer_raise || !lower_to) && raise_to) {
            step.branch = LinearBranch::raise_min;
            step.index = m1.index;
            step.mu_after = *raise_to;
        } else if (lower_to) {
            step.branch = to_vertex ? LinearBranch::lower_max_to_vertex : LinearBranch::lower_max;
            step.index = kmax;
            step.mu_after = *lower_to;
        } else {
            throw InfeasiblePrecisionError(
                    "linear precision cannot be met: smallest term " + std::to_string(m1.value) +
                    " (variable " + std::to_string(m1.index) + ") and largest term " +
                    std::to_string(M1.value) + " (variable " + std::to_string(kmax) +
                    ") cannot be brought within epsilon_l without mu < 1");
        }
        step.mu_before = mu[step.index];
        mu[step.index] = step.mu_after;
        res.linear_trace.push_back(step);
    }
}

MuResult find_mu_qubo(const UiqpProblem& p, const PrecisionConfig& cfg,
                      LinearAdjustVariant variant) {
    if (qubo_linear_monotone(p)) return find_mu_qubo_monotone(p, cfg);
    MuResult start = find_mu_qubo_quadratic(p, cfg);
    return adjust_mu_for_linear(p, std::move(start), cfg, variant);
}

}  // namespace intenc

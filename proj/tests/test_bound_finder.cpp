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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "catch_amalgamated.hpp"
#include "intenc/bound_finder.hpp"
#include "intenc/exceptions.hpp"
#include "intenc/transform.hpp"
#include "oracles.hpp"

namespace intenc {

using Catch::Matchers::ContainsSubstring;

namespace {

UiqpProblem make(const oracle::Matrix& Q, std::vector<double> q, IntegerVector kappa) {
    return UiqpProblem(SquareMatrix::from_rows(Q), std::move(q), std::move(kappa));
}

// Smallest and largest nonzero |Q_ii c^2 + q_i c| over every c in 1..mu_i.
std::pair<double, double> linear_range_scan(const UiqpProblem& p, const IntegerVector& mu) {
    double lo = INFINITY;
    double hi = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        for (std::int64_t c = 1; c <= mu[i]; ++c) {
            const double v = std::abs(p.Q()(i, i) * c * c + p.q()[i] * c);
            if (v == 0.0) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return {lo, hi};
}

// Minimum-over-maximum magnitude of a list, ignoring zeros; 1 when empty.
double ratio_of(const std::vector<double>& values) {
    double lo = INFINITY;
    double hi = 0.0;
    for (double v : values) {
        if (v == 0.0) continue;
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
    }
    return hi == 0.0 ? 1.0 : lo / hi;
}

double field_ratio(const IsingModel& m) { return ratio_of(m.h()); }

double coupler_ratio(const IsingModel& m) {
    std::vector<double> v;
    for (const auto& [key, value] : m.J()) v.push_back(value);
    return ratio_of(v);
}

}  // namespace

TEST_CASE("compute_ml_mc_spin") {
    const auto a = compute_ml_mc_spin(make({{2, 1}, {1, 2}}, {-4, -4}, {10, 10}));
    CHECK(a.m_l == 26);
    CHECK(a.m_c == 1);
    CHECK_THROWS_AS(compute_ml_mc_spin(make({{1}}, {-2}, {2})), StructuralError);
    const auto b = compute_ml_mc_spin(make({{1, 0}, {0, 1}}, {1, 3}, {2, 2}));
    CHECK(b.m_l == 3);
    CHECK(b.m_c == 1);
    CHECK_THROWS_AS(compute_ml_mc_spin(make({{0, 0}, {0, 0}}, {1, 3}, {2, 2})), StructuralError);
}

TEST_CASE("find_mu_spin") {
    const PrecisionConfig tenth{0.1, 0.1};
    GIVEN("Q=[[2,1],[1,2]], q=[-4,-4], kappa=[10,10] at 0.1") {
        const MuResult r = find_mu_spin(make({{2, 1}, {1, 2}}, {-4, -4}, {10, 10}), tenth);
        THEN("the square-root bound gives 2 and no pair needs a decrement") {
            CHECK(r.mu == IntegerVector{2, 2});
            CHECK(r.trace.empty());
            CHECK(r.m_l == 26.0);
            CHECK(r.m_c == 1.0);
        }
    }
    GIVEN("a diagonal Q with unit entries") {
        const MuResult r = find_mu_spin(make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {-30, -29, -28},
                                             {40, 40, 40}),
                                        PrecisionConfig{});
        THEN("every mu is at most 10 and the pair loop is not entered") {
            for (auto m : r.mu) CHECK(m <= 10);
            CHECK(r.trace.empty());
        }
    }
    GIVEN("a coupler that is too large for the initial bounds") {
        const MuResult r = find_mu_spin(make({{1, 50}, {50, 1}}, {0, 0}, {20, 20}), PrecisionConfig{});
        THEN("the loop decrements until the pair constraint holds") {
            CHECK(r.mu[0] * r.mu[1] <= 2);
            CHECK(r.trace.size() == static_cast<std::size_t>(r.initial_mu[0] + r.initial_mu[1] -
                                                             r.mu[0] - r.mu[1]));
            // equal xi on the first step goes to the lower index
            CHECK(r.trace.front().decremented == 0);
        }
    }
    SECTION("infeasible pairs are named") {
        CHECK_THROWS_WITH(find_mu_spin(make({{1, 1000}, {1000, 1}}, {0, 0}, {5, 5}), PrecisionConfig{}),
                          ContainsSubstring("(0, 1)"));
        CHECK_THROWS_AS(find_mu_spin(make({{1, 1000}, {1000, 1}}, {0, 0}, {5, 5}), PrecisionConfig{}),
                        InfeasiblePrecisionError);
    }
    SECTION("linear-only problems use the closed form") {
        const MuResult r = find_mu_spin(make({{0, 0}, {0, 0}}, {2, -4}, {500, 500}), PrecisionConfig{});
        CHECK(r.mu == IntegerVector{100, 50});
        CHECK_FALSE(r.m_c.has_value());
    }
    SECTION("mu never exceeds kappa") {
        const MuResult r = find_mu_spin(make({{1, 0}, {0, 1}}, {0, 0}, {3, 40}), PrecisionConfig{});
        CHECK(r.mu[0] == 3);
        CHECK(r.mu[1] <= 10);
    }
    CHECK_THROWS_AS(find_mu_spin(make({{1}}, {0}, {2}), PrecisionConfig{0.0, 0.5}), DomainError);
    CHECK_THROWS_AS(find_mu_spin(make({{1}}, {0}, {2}), PrecisionConfig{0.5, 1.5}), DomainError);
}

TEST_CASE("find_mu_linear_only and uniform_mu") {
    CHECK(find_mu_linear_only(std::vector<double>{2, -4}, 0.01).mu == IntegerVector{100, 50});
    CHECK(find_mu_linear_only(std::vector<double>{5}, 0.01).mu == IntegerVector{100});
    const MuResult clamped = find_mu_linear_only(std::vector<double>{1, 1000}, 0.5);
    CHECK(clamped.mu == IntegerVector{2, 1});
    CHECK_FALSE(clamped.warnings.empty());
    CHECK(find_mu_linear_only(std::vector<double>{0, 4}, 0.5, IntegerVector{9, 9}).mu ==
          IntegerVector{9, 2});
    CHECK_THROWS_AS(find_mu_linear_only(std::vector<double>{0, 4}, 0.5), DomainError);
    CHECK_THROWS_WITH(find_mu_linear_only(std::vector<double>{0, 0}, 0.5),
                      ContainsSubstring("objective is constant"));

    CHECK(uniform_mu(IntegerVector{3, 5, 4}) == 3);
    CHECK(uniform_mu(IntegerVector{7}) == 7);
    CHECK(uniform_mu(IntegerVector{1, 1}) == 1);
}

TEST_CASE("find_mu_qubo_quadratic") {
    const PrecisionConfig cfg{};
    CHECK(find_mu_qubo_quadratic(make({{1, 0}, {0, 1}}, {0, 0}, {50, 50}), cfg).mu ==
          IntegerVector{10, 10});
    const MuResult r = find_mu_qubo_quadratic(make({{4, 0}, {0, 1}}, {0, 0}, {50, 50}), cfg);
    CHECK(r.m_c == 1.0);
    CHECK(r.mu == IntegerVector{5, 10});

    GIVEN("a large off-diagonal entry with kappa = [2, 2]") {
        const MuResult s = find_mu_qubo_quadratic(make({{1, 50}, {50, 1}}, {0, 0}, {2, 2}), cfg);
        THEN("a single decrement restores mu_0 mu_1 <= 2") {
            CHECK(s.trace.size() == 1);
            CHECK(s.mu[0] * s.mu[1] <= 2);
        }
    }
    GIVEN("the same matrix with room to spare") {
        const MuResult s = find_mu_qubo_quadratic(make({{1, 50}, {50, 1}}, {0, 0}, {40, 40}), cfg);
        CHECK(s.initial_mu == IntegerVector{10, 10});
        CHECK(s.mu[0] * s.mu[1] <= 2);
    }
}

TEST_CASE("classify_indices and build_vm_vM") {
    SECTION("same signs: minimum at 1, maximum at mu") {
        const auto p = make({{1}}, {2}, {10});
        const IntegerVector mu{3};
        const IndexClasses c = classify_indices(p, mu);
        CHECK(c.min_class[0] == MinClass::at_one);
        CHECK(c.max_class[0] == MaxClass::at_mu);
        const LinearExtremes e = build_vm_vM(p, mu, c);
        CHECK(e.min_terms == std::vector<LinearExtreme>{{3, 1, 0}});
        CHECK(e.max_terms == std::vector<LinearExtreme>{{15, 3, 0}});
    }
    SECTION("Q=1, q=1, mu=3") {
        const auto p = make({{1}}, {1}, {10});
        const IntegerVector mu{3};
        const LinearExtremes e = build_vm_vM(p, mu, classify_indices(p, mu));
        CHECK(e.min_terms == std::vector<LinearExtreme>{{2, 1, 0}});
        CHECK(e.max_terms == std::vector<LinearExtreme>{{12, 3, 0}});
    }
    SECTION("a root at 1 moves the minimum to c = 2") {
        const auto p = make({{1}}, {-1}, {10});
        const IntegerVector mu{5};
        const IndexClasses c = classify_indices(p, mu);
        CHECK(c.min_class[0] == MinClass::at_two);
        const LinearExtremes e = build_vm_vM(p, mu, c);
        CHECK(e.min_terms.front().value == 2.0);
        CHECK(e.min_terms.front().at == 2);
    }
    SECTION("a non-integer root") {
        const auto p = make({{1}}, {-7.5}, {20});
        const IntegerVector mu{10};
        const IndexClasses c = classify_indices(p, mu);
        CHECK(c.min_class[0] == MinClass::near_root);
        CHECK(c.max_class[0] == MaxClass::near_vertex);
        const LinearExtremes e = build_vm_vM(p, mu, c);
        CHECK(e.min_terms == std::vector<LinearExtreme>{{3.5, 7, 0}});
        CHECK(e.max_terms == std::vector<LinearExtreme>{{25, 10, 0}});
    }
    SECTION("the case tables agree with a scan over 1..mu") {
        std::mt19937_64 gen(17);
        std::uniform_int_distribution<int> dQ(-6, 6);
        std::uniform_int_distribution<int> dq(-40, 40);
        std::uniform_int_distribution<int> dmu(1, 15);
        for (int trial = 0; trial < 3000; ++trial) {
            const double Qii = dQ(gen);
            const double qi = dq(gen) / (trial % 2 ? 2.0 : 1.0);
            const IntegerVector mu{dmu(gen)};
            const auto p = make({{Qii}}, {qi}, {20});
            const LinearExtremes e = build_vm_vM(p, mu, classify_indices(p, mu));
            const auto [lo, hi] = linear_range_scan(p, mu);
            INFO("Q " << Qii << " q " << qi << " mu " << mu[0]);
            if (hi == 0.0) {
                CHECK(e.min_terms.empty());
                continue;
            }
            REQUIRE(e.min_terms.size() == 1);
            CHECK(e.min_terms[0].value == lo);
            CHECK(e.max_terms[0].value == hi);
            const auto at = [&](std::int64_t c) { return std::abs(Qii * c * c + qi * c); };
            CHECK(at(e.min_terms[0].at) == lo);
            CHECK(at(e.max_terms[0].at) == hi);
        }
    }
}

TEST_CASE("adjust_mu_for_linear") {
    SECTION("satisfied input is returned unchanged") {
        const auto p = make({{1, 0}, {0, 2}}, {1, 1}, {10, 10});
        MuResult start;
        start.mu = {2, 2};
        const MuResult r = adjust_mu_for_linear(p, start, PrecisionConfig{});
        CHECK(r.mu == IntegerVector{2, 2});
        CHECK(r.linear_trace.empty());
    }
    GIVEN("Q=[[1]], q=[-7.5], kappa=20 with epsilon_l = 0.2") {
        const auto p = make({{1}}, {-7.5}, {20});
        const PrecisionConfig cfg{0.2, 0.01};
        const MuResult start = find_mu_qubo_quadratic(p, cfg);
        REQUIRE(start.mu == IntegerVector{10});
        const MuResult r = adjust_mu_for_linear(p, start, cfg);
        THEN("one step on the root side and the final ratio holds over 1..mu") {
            REQUIRE(r.linear_trace.size() == 1);
            CHECK(r.linear_trace[0].branch == LinearBranch::raise_min);
            const auto [lo, hi] = linear_range_scan(p, r.mu);
            CHECK(lo / hi >= 0.2);
        }
    }
    SECTION("both variants reach a valid bound") {
        const auto p = make({{1, 0}, {0, 3}}, {-7.5, -20}, {30, 30});
        const PrecisionConfig cfg{0.1, 0.01};
        for (auto variant : {LinearAdjustVariant::decrement, LinearAdjustVariant::below_minimizer}) {
            const MuResult r = find_mu_qubo(p, cfg, variant);
            const auto [lo, hi] = linear_range_scan(p, r.mu);
            CHECK(lo / hi >= 0.1);
        }
    }
}

TEST_CASE("monotone fast path") {
    // -q_i / Q_ii < 1 everywhere
    const auto p = make({{2, 1}, {1, 3}}, {1, 4}, {60, 60});
    REQUIRE(qubo_linear_monotone(p));
    const PrecisionConfig cfg{};
    const MuResult r = find_mu_qubo_monotone(p, cfg);
    const double ml = std::min(std::abs(2.0 + 1.0), std::abs(3.0 + 4.0));
    for (std::size_t i = 0; i < 2; ++i) {
        const double Qii = p.Q()(i, i);
        const double qi = p.q()[i];
        const double tilde = (-qi + std::sqrt(qi * qi + 4 * Qii * ml / cfg.epsilon_l)) / (2 * Qii);
        const double root = std::sqrt(1.0 / (Qii * cfg.epsilon_c));
        CHECK(r.initial_mu[i] == static_cast<std::int64_t>(std::floor(std::min(tilde, root))));
    }
    const auto [lo, hi] = linear_range_scan(p, r.mu);
    CHECK(lo / hi >= cfg.epsilon_l);
    CHECK_FALSE(qubo_linear_monotone(make({{1}}, {-7.5}, {20})));
}

TEST_CASE("output guarantees on random instances") {
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<int> dn(1, 4);
    std::uniform_int_distribution<int> dk(2, 40);
    std::uniform_int_distribution<int> dq(-30, 30);
    const PrecisionConfig cfg{};
    int spin_checked = 0;
    int qubo_checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto n = static_cast<std::size_t>(dn(gen));
        const auto Q = oracle::random_symmetric(gen, n, 3);
        std::vector<double> q(n);
        IntegerVector kappa(n);
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = dq(gen);
            kappa[i] = dk(gen);
        }
        const auto p = make(Q, q, kappa);
        if (!p.has_quadratic_terms()) continue;
        const IntEncoding unary = IntEncoding::unary(kappa);

        const IsingModel u = uiqp_to_ising(p, unary);
        if (field_ratio(u) >= cfg.epsilon_l && coupler_ratio(u) >= cfg.epsilon_c) {
            MuResult r;
            try {
                r = find_mu_spin(p, cfg);
            } catch (const InfeasiblePrecisionError&) {
                continue;
            }
            const IsingModel m = uiqp_to_ising(p, IntEncoding::bounded(kappa, r.mu));
            INFO("trial " << trial);
            CHECK(field_ratio(m) >= cfg.epsilon_l);
            CHECK(coupler_ratio(m) >= cfg.epsilon_c);
            const auto steps = std::accumulate(r.initial_mu.begin(), r.initial_mu.end(), std::int64_t{0}) -
                               std::accumulate(r.mu.begin(), r.mu.end(), std::int64_t{0});
            CHECK(static_cast<std::int64_t>(r.trace.size()) == steps);

            // joint positive scaling leaves the bounds unchanged; a power of
            // two keeps cancelling local fields exactly zero
            oracle::Matrix Q3 = Q;
            for (auto& row : Q3) {
                for (double& v : row) v *= 0.25;
            }
            std::vector<double> q3 = q;
            for (double& v : q3) v *= 0.25;
            CHECK(find_mu_spin(make(Q3, q3, kappa), cfg).mu == r.mu);
            ++spin_checked;
        }

        const QuboModel uq = uiqp_to_qubo(p, unary);
        const TransformReport ur = qubo_ratios(uq);
        if (ur.ratio_field >= cfg.epsilon_l && ur.ratio_coupler >= cfg.epsilon_c) {
            MuResult r;
            try {
                r = find_mu_qubo(p, cfg);
            } catch (const InfeasiblePrecisionError&) {
                continue;
            }
            const TransformReport qr = qubo_ratios(uiqp_to_qubo(p, IntEncoding::bounded(kappa, r.mu)));
            INFO("trial " << trial);
            CHECK(qr.ratio_field >= cfg.epsilon_l);
            CHECK(qr.ratio_coupler >= cfg.epsilon_c);
            ++qubo_checked;
        }
    }
    CHECK(spin_checked >= 100);
    CHECK(qubo_checked >= 50);
}

}  // namespace intenc

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
#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "intenc/exact_solver.hpp"
#include "intenc/exceptions.hpp"
#include "intenc/transform.hpp"
#include "oracles.hpp"

namespace intenc {

using Catch::Matchers::WithinAbs;

namespace {

UiqpProblem make(const oracle::Matrix& Q, std::vector<double> q, IntegerVector kappa) {
    return UiqpProblem(SquareMatrix::from_rows(Q), std::move(q), std::move(kappa));
}

// Ground states by evaluating every spin vector directly.
std::pair<double, std::set<SpinVector>> enumerate(const IsingModel& m, double tol = 1e-9) {
    const std::size_t n = m.num_spins();
    double best = INFINITY;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        best = std::min(best, evaluate_ising(m, oracle::spins_of(b, n)));
    }
    std::set<SpinVector> states;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        const auto s = oracle::spins_of(b, n);
        if (evaluate_ising(m, s) <= best + tol) states.insert(s);
    }
    return {best, states};
}

IsingModel random_ising(std::mt19937_64& gen, std::size_t n, bool zero_fields) {
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<double> h(n, 0.0);
    if (!zero_fields) {
        for (double& v : h) v = d(gen) * 0.5;
    }
    IsingModel::CouplerMap J;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int v = d(gen);
            if (v != 0) J[{i, j}] = v * 0.25;
        }
    }
    return IsingModel(h, J, d(gen));
}

}  // namespace

TEST_CASE("ground_states examples") {
    const GroundStateResult a = ground_states(IsingModel({0, 0}, {{{0, 1}, 0.5}}, -0.5));
    CHECK(a.energy == -1.0);
    CHECK(a.degeneracy == 2);
    CHECK(a.states == std::vector<SpinVector>{{-1, 1}, {1, -1}});

    const GroundStateResult b = ground_states(IsingModel({1}, {}, 0));
    CHECK(b.energy == -1.0);
    CHECK(b.states == std::vector<SpinVector>{{-1}});

    const GroundStateResult c = ground_states(IsingModel({0}, {}, 0));
    CHECK(c.energy == 0.0);
    CHECK(c.degeneracy == 2);
}

TEST_CASE("ground_states agrees with direct enumeration") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 12);
        const IsingModel m = random_ising(gen, n, false);
        const GroundStateResult g = ground_states(m);
        const auto [energy, states] = enumerate(m);
        INFO("trial " << trial);
        CHECK_THAT(g.energy, WithinAbs(energy, 1e-12));
        CHECK(std::set<SpinVector>(g.states.begin(), g.states.end()) == states);
        CHECK(std::is_sorted(g.states.begin(), g.states.end()));
        CHECK(g.degeneracy == g.states.size());
        for (const auto& s : g.states) CHECK(evaluate_ising(m, s) <= g.energy + g.tolerance);
    }
}

TEST_CASE("zero-field models are closed under a global flip") {
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 100; ++trial) {
        const IsingModel m = random_ising(gen, 2 + static_cast<std::size_t>(trial % 9), true);
        const GroundStateResult g = ground_states(m);
        const std::set<SpinVector> set(g.states.begin(), g.states.end());
        for (SpinVector s : g.states) {
            for (auto& v : s) v = static_cast<std::int8_t>(-v);
            CHECK(set.count(s) == 1);
        }
    }
}

TEST_CASE("ground_states capacity and tolerance") {
    CHECK_THROWS_AS(ground_states(IsingModel(std::vector<double>(31, 1.0), {}, 0)), CapacityError);
    CHECK_THROWS_AS(ground_states(IsingModel({1}, {}, 0), -1.0), DomainError);
    // 0.5 apart: a loose tolerance merges the two levels
    const IsingModel m({0.25}, {}, 0);
    CHECK(ground_states(m).degeneracy == 1);
    CHECK(ground_states(m, 0.6).degeneracy == 2);
}

TEST_CASE("brute_force_uiqp") {
    const UiqpOptimum a = brute_force_uiqp(make({{1}}, {-2}, {2}));
    CHECK(a.energy == -1.0);
    CHECK(a.argmin == std::vector<IntegerVector>{{1}});

    const UiqpOptimum b = brute_force_uiqp(make({{0}}, {1}, {5}));
    CHECK(b.argmin == std::vector<IntegerVector>{{0}});

    const UiqpOptimum c = brute_force_uiqp(make({{0, 0}, {0, 0}}, {0, 0}, {1, 1}));
    CHECK(c.argmin.size() == 4);
    CHECK(std::is_sorted(c.argmin.begin(), c.argmin.end()));

    CHECK_THROWS_AS(brute_force_uiqp(make({{0, 0}, {0, 0}}, {1, 1}, {2000, 2000})), CapacityError);
}

TEST_CASE("Ising ground states decode to the integer argmin") {
    std::mt19937_64 gen(21);
    std::uniform_int_distribution<int> dn(1, 3);
    std::uniform_int_distribution<int> dk(1, 5);
    std::uniform_int_distribution<int> dq(-8, 8);
    for (int trial = 0; trial < 80; ++trial) {
        const auto n = static_cast<std::size_t>(dn(gen));
        const auto Q = oracle::random_symmetric(gen, n, 3);
        std::vector<double> q(n);
        IntegerVector kappa(n);
        IntegerVector mu(n);
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = dq(gen);
            kappa[i] = dk(gen);
            mu[i] = std::uniform_int_distribution<std::int64_t>(1, kappa[i])(gen);
        }
        const auto p = make(Q, q, kappa);
        const auto [best, argmin] = oracle::integer_argmin(Q, q, kappa);
        const UiqpOptimum bf = brute_force_uiqp(p);
        CHECK_THAT(bf.energy, WithinAbs(best, 1e-9));
        CHECK(std::set<IntegerVector>(bf.argmin.begin(), bf.argmin.end()) == argmin);
        for (const IntEncoding& enc : {IntEncoding::bounded(kappa, mu), IntEncoding::binary(kappa),
                                       IntEncoding::unary(kappa)}) {
            const GroundStateResult g = ground_states(uiqp_to_ising(p, enc));
            CHECK_THAT(g.energy, WithinAbs(best, 1e-9));
            std::set<IntegerVector> decoded;
            for (const auto& s : g.states) decoded.insert(decode_spins(enc, s));
            CHECK(decoded == argmin);
        }
    }
}

}  // namespace intenc

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

// Reference computations for the tests. Everything here works on plain
// vectors by direct enumeration and shares no code path with the library
// routines it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

/// All subset sums of c by enumerating the 2^d subsets.
inline std::set<std::int64_t> subset_sums(const std::vector<std::int64_t>& c) {
    std::set<std::int64_t> out;
    const std::uint64_t total = std::uint64_t{1} << c.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (mask >> j & 1u) s += c[j];
        }
        out.insert(s);
    }
    return out;
}

/// Classical criterion: sorted ascending, every coefficient is at most one
/// more than the sum of the smaller ones, and the total is kappa.
inline bool prefix_complete(std::vector<std::int64_t> c, std::int64_t kappa) {
    std::sort(c.begin(), c.end());
    std::int64_t reach = 0;
    for (std::int64_t v : c) {
        if (v < 1 || v > reach + 1) return false;
        reach += v;
    }
    return reach == kappa;
}

/// Number of binary vectors per decoded value, by enumeration.
inline std::vector<std::uint64_t> word_counts(const std::vector<std::int64_t>& c) {
    std::int64_t total = 0;
    for (std::int64_t v : c) total += v;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(total) + 1, 0);
    const std::uint64_t n = std::uint64_t{1} << c.size();
    for (std::uint64_t mask = 0; mask < n; ++mask) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (mask >> j & 1u) s += c[j];
        }
        ++counts[static_cast<std::size_t>(s)];
    }
    return counts;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// x^t Q x + q^t x.
inline double objective(const Matrix& Q, const std::vector<double>& q,
                        const std::vector<std::int64_t>& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        f += q[i] * static_cast<double>(x[i]);
        for (std::size_t j = 0; j < x.size(); ++j) {
            f += Q[i][j] * static_cast<double>(x[i]) * static_cast<double>(x[j]);
        }
    }
    return f;
}

/// All points of the box {0..kappa_i} in lexicographic order.
inline std::vector<std::vector<std::int64_t>> box_points(const std::vector<std::int64_t>& kappa) {
    std::vector<std::vector<std::int64_t>> out{{}};
    for (std::int64_t k : kappa) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& prefix : out) {
            for (std::int64_t v = 0; v <= k; ++v) {
                auto p = prefix;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Minimum of the objective and all points within tol of it.
inline std::pair<double, std::set<std::vector<std::int64_t>>> integer_argmin(
        const Matrix& Q, const std::vector<double>& q, const std::vector<std::int64_t>& kappa,
        double tol = 1e-9) {
    const auto pts = box_points(kappa);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : pts) best = std::min(best, objective(Q, q, x));
    std::set<std::vector<std::int64_t>> arg;
    for (const auto& x : pts) {
        if (objective(Q, q, x) <= best + tol) arg.insert(x);
    }
    return {best, arg};
}

/// Spin vector number `bits` of length n, bit i set meaning +1.
inline std::vector<std::int8_t> spins_of(std::uint64_t bits, std::size_t n) {
    std::vector<std::int8_t> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i & 1u) ? 1 : -1;
    return s;
}

inline std::vector<std::uint8_t> bits_of(std::uint64_t bits, std::size_t n) {
    std::vector<std::uint8_t> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = (bits >> i & 1u) ? 1 : 0;
    return y;
}

/// Sample standard deviation.
inline double sample_std(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

/// Random symmetric integer matrix with entries in [-a, a].
inline Matrix random_symmetric(std::mt19937_64& gen, std::size_t n, int a) {
    std::uniform_int_distribution<int> d(-a, a);
    Matrix Q(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) Q[i][j] = Q[j][i] = d(gen);
    }
    return Q;
}

}  // namespace oracle

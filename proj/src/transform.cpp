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

#include "intenc/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "intenc/exceptions.hpp"

namespace intenc {

namespace {

void require_same_variables(const UiqpProblem& p, const IntEncoding& enc) {
    if (enc.num_variables() != p.num_variables()) {
        throw ShapeError("encoding covers " + std::to_string(enc.num_variables()) +
                         " variables, problem has " + std::to_string(p.num_variables()));
    }
}

void require_sums_match_kappa(const UiqpProblem& p, const IntEncoding& enc) {
    const IntegerVector sums = enc.sums();
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (sums[i] != p.kappa()[i]) {
            throw EncodingMismatchError("coefficients of variable " + std::to_string(i) +
                                        " sum to " + std::to_string(sums[i]) + ", kappa is " +
                                        std::to_string(p.kappa()[i]));
        }
    }
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    std::size_t count = 0;

    void add(double v) {
        const double a = std::abs(v);
        if (a == 0.0) return;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
        ++count;
    }
};

TransformReport make_report(const Range& field, const Range& coupler, std::size_t n) {
    TransformReport r;
    r.num_variables = n;
    r.num_couplers = coupler.count;
    r.field_empty = field.count == 0;
    r.coupler_empty = coupler.count == 0;
    if (!r.field_empty) {
        r.min_field = field.lo;
        r.max_field = field.hi;
        r.ratio_field = field.lo / field.hi;
    }
    if (!r.coupler_empty) {
        r.min_coupler = coupler.lo;
        r.max_coupler = coupler.hi;
        r.ratio_coupler = coupler.lo / coupler.hi;
    }
    return r;
}

}  // namespace

IsingModel uiqp_to_ising(const UiqpProblem& p, const IntEncoding& enc) {
    require_same_variables(p, enc);
    require_sums_match_kappa(p, enc);

    const std::size_t n = p.num_variables();
    const auto& Q = p.Q();
    const auto& kappa = p.kappa();

    std::vector<double> local(n);  // [Q kappa + q]_i
    for (std::size_t i = 0; i < n; ++i) {
        double v = p.q()[i];
        for (std::size_t k = 0; k < n; ++k) v += Q(i, k) * static_cast<double>(kappa[k]);
        local[i] = v;
    }

    std::vector<double> h(enc.total_width(), 0.0);
    IsingModel::CouplerMap J;
    double diag_trace = 0.0;  // sum_j (C^t Q C)_jj

    for (std::size_t i = 0; i < n; ++i) {
        const auto& ci = enc.coefficients(i);
        const std::size_t si = enc.block_start(i);
        for (std::size_t k = 0; k < ci.size(); ++k) {
            const double ck = static_cast<double>(ci[k]);
            h[si + k] = 0.5 * local[i] * ck;
            diag_trace += Q(i, i) * ck * ck;
        }
        for (std::size_t j = i; j < n; ++j) {
            const double qij = Q(i, j);
            if (qij == 0.0) continue;
            const auto& cj = enc.coefficients(j);
            const std::size_t sj = enc.block_start(j);
            for (std::size_t k = 0; k < ci.size(); ++k) {
                // same-variable blocks only contribute their strict upper triangle
                const std::size_t l0 = (i == j) ? k + 1 : 0;
                for (std::size_t l = l0; l < cj.size(); ++l) {
                    const double v = 0.5 * qij * static_cast<double>(ci[k]) *
                                     static_cast<double>(cj[l]);
                    if (v != 0.0) J.emplace(std::make_pair(si + k, sj + l), v);
                }
            }
        }
    }

    double kQk = 0.0;
    double qk = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t k = 0; k < n; ++k) row += Q(i, k) * static_cast<double>(kappa[k]);
        kQk += static_cast<double>(kappa[i]) * row;
        qk += p.q()[i] * static_cast<double>(kappa[i]);
    }
    const double offset = 0.25 * (kQk + diag_trace + 2.0 * qk);
    return IsingModel(std::move(h), std::move(J), offset);
}

QuboModel uiqp_to_qubo(const UiqpProblem& p, const IntEncoding& enc) {
    require_same_variables(p, enc);
    const std::size_t n = p.num_variables();
    const auto& Q = p.Q();

    SquareMatrix QB(enc.total_width());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& ci = enc.coefficients(i);
        const std::size_t si = enc.block_start(i);
        for (std::size_t j = i; j < n; ++j) {
            const auto& cj = enc.coefficients(j);
            const std::size_t sj = enc.block_start(j);
            for (std::size_t k = 0; k < ci.size(); ++k) {
                for (std::size_t l = 0; l < cj.size(); ++l) {
                    // fill both triangles from one product so QB is exactly symmetric
                    const double v =
                            Q(i, j) * static_cast<double>(ci[k]) * static_cast<double>(cj[l]);
                    QB(si + k, sj + l) = v;
                    QB(sj + l, si + k) = v;
                }
            }
        }
        for (std::size_t k = 0; k < ci.size(); ++k) {
            const double ck = static_cast<double>(ci[k]);
            QB(si + k, si + k) = Q(i, i) * ck * ck + p.q()[i] * ck;
        }
    }
    return QuboModel(std::move(QB), 0.0);
}

IntegerVector decode_spins(const IntEncoding& enc, std::span<const std::int8_t> s) {
    if (s.size() != enc.total_width()) {
        throw ShapeError("spin vector has " + std::to_string(s.size()) + " entries, encoding has " +
                         std::to_string(enc.total_width()));
    }
    IntegerVector x(enc.num_variables());
    for (std::size_t i = 0; i < enc.num_variables(); ++i) {
        const auto& c = enc.coefficients(i);
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            const std::int8_t sj = s[enc.block_start(i) + j];
            if (sj != 1 && sj != -1) throw DomainError("spin values must be +1 or -1");
            acc += c[j] * (1 + sj);
        }
        x[i] = acc / 2;  // sum c_j (1 + s_j) is always even
    }
    return x;
}

IntegerVector decode_binaries(const IntEncoding& enc, std::span<const std::uint8_t> y) {
    if (y.size() != enc.total_width()) {
        throw ShapeError("binary vector has " + std::to_string(y.size()) +
                         " entries, encoding has " + std::to_string(enc.total_width()));
    }
    IntegerVector x(enc.num_variables());
    for (std::size_t i = 0; i < enc.num_variables(); ++i) {
        x[i] = decode(enc.coefficients(i), y.subspan(enc.block_start(i), enc.width(i)));
    }
    return x;
}

IsingModel scale_ising(const IsingModel& m) {
    double scale = 0.0;
    for (const auto& [key, v] : m.J()) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) {
        for (double v : m.h()) scale = std::max(scale, std::abs(v));
    }
    if (scale == 0.0) return m;

    std::vector<double> h = m.h();
    for (double& v : h) v /= scale;
    IsingModel::CouplerMap J = m.J();
    for (auto& [key, v] : J) v /= scale;
    return IsingModel(std::move(h), std::move(J), m.offset() / scale);
}

TransformReport ising_ratios(const IsingModel& m) {
    Range field, coupler;
    for (double v : m.h()) field.add(v);
    for (const auto& [key, v] : m.J()) coupler.add(v);
    return make_report(field, coupler, m.num_spins());
}

TransformReport qubo_ratios(const QuboModel& m) {
    Range linear, quadratic;
    const auto& QB = m.QB();
    for (std::size_t i = 0; i < QB.size(); ++i) {
        linear.add(QB(i, i));
        for (std::size_t j = i + 1; j < QB.size(); ++j) quadratic.add(QB(i, j));
    }
    return make_report(linear, quadratic, m.num_bits());
}

bool field_exceeds(const IsingModel& m, double limit) {
    return std::any_of(m.h().begin(), m.h().end(),
                       [limit](double v) { return std::abs(v) > limit; });
}

}  // namespace intenc

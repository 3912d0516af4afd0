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

#include "intenc/exact_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "intenc/exceptions.hpp"

namespace intenc {

namespace {

// Cap on the number of near-optimal candidates held during the sweep.
constexpr std::size_t kMaxCandidates = std::size_t{1} << 22;

// Full resynchronisation interval of the incremental sweep.
constexpr std::uint64_t kResyncMask = (std::uint64_t{1} << 12) - 1;

SpinVector to_spins(std::uint32_t bits, std::size_t n) {
    SpinVector s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1u ? 1 : -1;
    return s;
}

class Sweep {
 public:
    explicit Sweep(const IsingModel& m)
            : n_(m.num_spins()), h_(m.h()), J_(n_ * n_, 0.0), offset_(m.offset()) {
        for (const auto& [key, v] : m.J()) {
            J_[key.first * n_ + key.second] = v;
            J_[key.second * n_ + key.first] = v;
        }
        spin_.assign(n_, -1.0);
        field_.assign(n_, 0.0);
        resync();
    }

    double energy() const { return energy_; }

    void flip(std::size_t k) {
        energy_ -= 2.0 * spin_[k] * field_[k];
        spin_[k] = -spin_[k];
        const double twice = 2.0 * spin_[k];
        const double* row = J_.data() + k * n_;
        for (std::size_t j = 0; j < n_; ++j) field_[j] += twice * row[j];
    }

    // Recomputes fields and energy from the current spins.
    void resync() {
        energy_ = offset_;
        for (std::size_t i = 0; i < n_; ++i) {
            double f = h_[i];
            const double* row = J_.data() + i * n_;
            for (std::size_t j = 0; j < n_; ++j) f += row[j] * spin_[j];
            field_[i] = f;
            // each coupler appears twice in sum_i s_i (f_i - h_i)
            energy_ += spin_[i] * (h_[i] + 0.5 * (f - h_[i]));
        }
    }

 private:
    std::size_t n_;
    std::vector<double> h_;
    std::vector<double> J_;
    double offset_;
    std::vector<double> spin_;
    std::vector<double> field_;
    double energy_ = 0.0;
};

}  // namespace

GroundStateResult ground_states(const IsingModel& m, double tol) {
    const std::size_t n = m.num_spins();
    if (n > kMaxExactSpins) {
        throw CapacityError("exact solver is limited to " + std::to_string(kMaxExactSpins) +
                            " spins, model has " + std::to_string(n) +
                            "; reduce kappa or raise mu");
    }
    if (!(tol >= 0.0)) throw DomainError("tolerance must be non-negative");

    double scale = std::abs(m.offset());
    for (double v : m.h()) scale += std::abs(v);
    for (const auto& [key, v] : m.J()) scale += std::abs(v);
    const double slack = 1e-9 * std::max(1.0, scale);

    Sweep sweep(m);
    struct Candidate {
        std::uint32_t bits;
        double approx;
    };
    std::vector<Candidate> cands{{0u, sweep.energy()}};
    double best = sweep.energy();
    std::size_t kept_at_prune = 1;

    auto prune = [&](double threshold) {
        std::erase_if(cands, [threshold](const Candidate& c) { return c.approx > threshold; });
        kept_at_prune = cands.size();
    };

    std::uint32_t bits = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t t = 1; t < total; ++t) {
        const auto k = static_cast<std::size_t>(std::countr_zero(t));
        sweep.flip(k);
        bits ^= std::uint32_t{1} << k;
        if ((t & kResyncMask) == 0) sweep.resync();

        const double e = sweep.energy();
        if (e <= best + tol + slack) {
            if (e < best) best = e;
            cands.push_back({bits, e});
            if (cands.size() > 2 * kept_at_prune + 1024) {
                prune(best + tol + slack);
                if (cands.size() > kMaxCandidates) {
                    throw CapacityError("ground state degeneracy exceeds " +
                                        std::to_string(kMaxCandidates) + " states");
                }
            }
        }
    }
    prune(best + tol + slack);

    std::vector<std::pair<double, SpinVector>> exact;
    exact.reserve(cands.size());
    for (const Candidate& c : cands) {
        SpinVector s = to_spins(c.bits, n);
        const double e = evaluate_ising(m, s);
        exact.emplace_back(e, std::move(s));
    }
    double e_min = std::numeric_limits<double>::infinity();
    for (const auto& [e, s] : exact) e_min = std::min(e_min, e);

    GroundStateResult out;
    out.energy = e_min;
    out.tolerance = tol;
    for (auto& [e, s] : exact) {
        if (e <= e_min + tol) out.states.push_back(std::move(s));
    }
    std::sort(out.states.begin(), out.states.end());
    out.degeneracy = out.states.size();
    return out;
}

UiqpOptimum brute_force_uiqp(const UiqpProblem& p, double tol) {
    const std::size_t n = p.num_variables();
    std::size_t grid = 1;
    for (std::int64_t k : p.kappa()) {
        const auto size = static_cast<std::size_t>(k) + 1;
        if (grid > kMaxUiqpGrid / size) {
            throw CapacityError("integer grid exceeds " + std::to_string(kMaxUiqpGrid) +
                                " points");
        }
        grid *= size;
    }

    // odometer over x with x_0 most significant, i.e. lexicographic order
    auto for_each_point = [&](auto&& fn) {
        IntegerVector x(n, 0);
        for (;;) {
            fn(x);
            std::size_t i = n;
            while (i > 0) {
                --i;
                if (x[i] < p.kappa()[i]) {
                    ++x[i];
                    break;
                }
                x[i] = 0;
                if (i == 0) return;
            }
        }
    };

    double best = std::numeric_limits<double>::infinity();
    for_each_point([&](const IntegerVector& x) { best = std::min(best, evaluate_uiqp(p, x)); });

    UiqpOptimum out;
    out.energy = best;
    for_each_point([&](const IntegerVector& x) {
        if (evaluate_uiqp(p, x) <= best + tol) out.argmin.push_back(x);
    });
    return out;
}

}  // namespace intenc

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

#include "intenc/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "intenc/exceptions.hpp"

namespace intenc {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + " contains a non-finite entry");
    }
}

}  // namespace

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    SquareMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) {
            throw ShapeError("matrix is not square: row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(rows.size()));
        }
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.n_);
    }
    return m;
}

std::vector<std::vector<double>> SquareMatrix::to_rows() const {
    std::vector<std::vector<double>> rows(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        rows[i].assign(data_.begin() + i * n_, data_.begin() + (i + 1) * n_);
    }
    return rows;
}

SquareMatrix symmetrize(const SquareMatrix& Q) {
    SquareMatrix out(Q.size());
    for (std::size_t i = 0; i < Q.size(); ++i) {
        for (std::size_t j = 0; j < Q.size(); ++j) {
            // (a + b) / 2 is exact for a == b, so symmetric input is a fixed point
            out(i, j) = (Q(i, j) + Q(j, i)) / 2.0;
        }
    }
    return out;
}

double asymmetry(const SquareMatrix& Q) {
    double worst = 0.0;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        for (std::size_t j = i + 1; j < Q.size(); ++j) {
            worst = std::max(worst, std::abs(Q(i, j) - Q(j, i)));
        }
    }
    return worst;
}

UiqpProblem::UiqpProblem(SquareMatrix Q, std::vector<double> q, IntegerVector kappa)
        : q_(std::move(q)), kappa_(std::move(kappa)) {
    const std::size_t n = q_.size();
    if (n == 0) throw ShapeError("problem must have at least one variable");
    if (Q.size() != n) {
        throw ShapeError("Q is " + std::to_string(Q.size()) + "x" + std::to_string(Q.size()) +
                         " but q has " + std::to_string(n) + " entries");
    }
    if (kappa_.size() != n) {
        throw ShapeError("kappa has " + std::to_string(kappa_.size()) + " entries, expected " +
                         std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        require_finite(q_[i], "q");
        for (std::size_t j = 0; j < n; ++j) require_finite(Q(i, j), "Q");
        if (kappa_[i] < 1) {
            throw DomainError("kappa must be >= 1 (variable " + std::to_string(i) + " has " +
                              std::to_string(kappa_[i]) + ")");
        }
    }
    Q_ = symmetrize(Q);
}

bool UiqpProblem::has_quadratic_terms() const {
    for (std::size_t i = 0; i < Q_.size(); ++i) {
        for (double v : Q_.row(i)) {
            if (v != 0.0) return true;
        }
    }
    return false;
}

double evaluate_uiqp(const UiqpProblem& p, std::span<const std::int64_t> x) {
    const std::size_t n = p.num_variables();
    if (x.size() != n) {
        throw ShapeError("integer vector has " + std::to_string(x.size()) + " entries, expected " +
                         std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] < 0 || x[i] > p.kappa()[i]) {
            throw DomainError("x[" + std::to_string(i) + "] = " + std::to_string(x[i]) +
                              " outside [0, " + std::to_string(p.kappa()[i]) + "]");
        }
    }
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = static_cast<double>(x[i]);
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += p.Q()(i, j) * static_cast<double>(x[j]);
        value += xi * row + p.q()[i] * xi;
    }
    return value;
}

IsingModel::IsingModel(std::vector<double> h, CouplerMap J, double offset)
        : h_(std::move(h)), J_(std::move(J)), offset_(offset) {
    for (double v : h_) require_finite(v, "h");
    require_finite(offset_, "offset");
    for (const auto& [key, value] : J_) {
        const auto [i, j] = key;
        if (i >= j) {
            throw DomainError("coupler (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") must satisfy i < j");
        }
        if (j >= h_.size()) {
            throw ShapeError("coupler (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") out of range for " + std::to_string(h_.size()) + " spins");
        }
        require_finite(value, "J");
    }
}

double evaluate_ising(const IsingModel& m, std::span<const std::int8_t> s) {
    if (s.size() != m.num_spins()) {
        throw ShapeError("spin vector has " + std::to_string(s.size()) + " entries, expected " +
                         std::to_string(m.num_spins()));
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != 1 && s[i] != -1) {
            throw DomainError("spin " + std::to_string(i) + " is not +1 or -1");
        }
    }
    double energy = m.offset();
    for (std::size_t i = 0; i < s.size(); ++i) energy += m.h()[i] * s[i];
    for (const auto& [key, value] : m.J()) energy += value * s[key.first] * s[key.second];
    return energy;
}

QuboModel::QuboModel(SquareMatrix QB, double offset) : QB_(std::move(QB)), offset_(offset) {
    require_finite(offset_, "offset");
    for (std::size_t i = 0; i < QB_.size(); ++i) {
        for (std::size_t j = 0; j < QB_.size(); ++j) {
            require_finite(QB_(i, j), "QB");
            if (QB_(i, j) != QB_(j, i)) throw DomainError("QB must be symmetric");
        }
    }
}

double evaluate_qubo(const QuboModel& m, std::span<const std::uint8_t> y) {
    const std::size_t n = m.num_bits();
    if (y.size() != n) {
        throw ShapeError("binary vector has " + std::to_string(y.size()) + " entries, expected " +
                         std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i] > 1) throw DomainError("bit " + std::to_string(i) + " is not 0 or 1");
    }
    double energy = m.offset();
    for (std::size_t i = 0; i < n; ++i) {
        if (!y[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j]) energy += m.QB()(i, j);
        }
    }
    return energy;
}

}  // namespace intenc

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
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace intenc {

using IntegerVector = std::vector<std::int64_t>;
using SpinVector = std::vector<std::int8_t>;
using BinaryVector = std::vector<std::uint8_t>;

/// Dense row-major square matrix of doubles.
class SquareMatrix {
 public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    /// Build from nested rows; throws ShapeError unless every row has
    /// rows.size() entries.
    static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    std::vector<std::vector<double>> to_rows() const;

    bool operator==(const SquareMatrix&) const = default;

 private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Returns (Q + Q^t) / 2.
SquareMatrix symmetrize(const SquareMatrix& Q);

/// Largest |Q_ij - Q_ji|.
double asymmetry(const SquareMatrix& Q);

/// Bounded-integer unconstrained quadratic program
///
///     min x^t Q x + q^t x,   x_i in {0, 1, ..., kappa_i}.
///
/// The quadratic matrix is symmetrized on construction, so `Q()` is always
/// exactly symmetric. Construction validates shapes, finiteness and
/// kappa_i >= 1.
class UiqpProblem {
 public:
    UiqpProblem(SquareMatrix Q, std::vector<double> q, IntegerVector kappa);

    std::size_t num_variables() const { return q_.size(); }
    const SquareMatrix& Q() const { return Q_; }
    const std::vector<double>& q() const { return q_; }
    const IntegerVector& kappa() const { return kappa_; }

    /// True when Q has at least one nonzero entry.
    bool has_quadratic_terms() const;

    bool operator==(const UiqpProblem&) const = default;

 private:
    SquareMatrix Q_;
    std::vector<double> q_;
    IntegerVector kappa_;
};

/// x^t Q x + q^t x. Throws DomainError when x violates the box.
double evaluate_uiqp(const UiqpProblem& p, std::span<const std::int64_t> x);

/// Ising model  sum_{i<j} J_ij s_i s_j + sum_i h_i s_i + offset.
///
/// Couplers are keyed by (i, j) with i < j; every stored coupler is counted
/// exactly once in the energy.
class IsingModel {
 public:
    using CouplerMap = std::map<std::pair<std::size_t, std::size_t>, double>;

    IsingModel() = default;
    IsingModel(std::vector<double> h, CouplerMap J, double offset);

    std::size_t num_spins() const { return h_.size(); }
    const std::vector<double>& h() const { return h_; }
    const CouplerMap& J() const { return J_; }
    double offset() const { return offset_; }

    bool operator==(const IsingModel&) const = default;

 private:
    std::vector<double> h_;
    CouplerMap J_;
    double offset_ = 0.0;
};

/// Throws DomainError for entries outside {-1, +1}.
double evaluate_ising(const IsingModel& m, std::span<const std::int8_t> s);

/// QUBO model  y^t QB y + offset  with y_i^2 = y_i, so the diagonal of QB
/// holds the linear coefficients.
class QuboModel {
 public:
    QuboModel() = default;
    QuboModel(SquareMatrix QB, double offset);

    std::size_t num_bits() const { return QB_.size(); }
    const SquareMatrix& QB() const { return QB_; }
    double offset() const { return offset_; }

    bool operator==(const QuboModel&) const = default;

 private:
    SquareMatrix QB_;
    double offset_ = 0.0;
};

double evaluate_qubo(const QuboModel& m, std::span<const std::uint8_t> y);

}  // namespace intenc

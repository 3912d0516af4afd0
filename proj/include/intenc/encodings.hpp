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
#include <string_view>
#include <vector>

#include "intenc/model.hpp"

namespace intenc {

/// Coefficients c of an integer encoding x = sum_j c_j y_j.
using Coefficients = std::vector<std::int64_t>;

enum class EncodingScheme { bounded, binary, unary };

std::string_view to_string(EncodingScheme scheme);

/// Parses "bounded", "binary" or "unary"; throws DomainError otherwise.
EncodingScheme parse_encoding_scheme(std::string_view name);

/// Record of how a bounded-coefficient sequence was built.
///
/// When `binary_branch` is set, kappa was small enough that the truncated
/// binary sequence already respects mu and rho/nu/eta are not meaningful.
/// Otherwise the sequence is the binary prefix 2^0..2^(rho-1), followed by
/// eta copies of mu and the nonzero residual nu - eta * mu, if any.
struct BoundedConstruction {
    Coefficients coefficients;
    std::int64_t kappa = 0;
    std::int64_t mu = 0;
    bool binary_branch = false;
    std::int64_t rho = 0;
    std::int64_t nu = 0;
    std::int64_t eta = 0;
};

/// Builds the bounded-coefficient sequence for 1 <= mu <= kappa together with
/// its construction record. Throws DomainError outside that range.
BoundedConstruction bounded_coefficient_construction(std::int64_t kappa, std::int64_t mu);

Coefficients bounded_coefficient_encoding(std::int64_t kappa, std::int64_t mu);

/// [1, 2, ..., 2^(L-1), kappa - (2^L - 1)] with L = floor(log2 kappa).
/// The last coefficient is truncated so the sequence is kappa-complete.
Coefficients binary_encoding(std::int64_t kappa);

/// kappa ones.
Coefficients unary_encoding(std::int64_t kappa);

/// Length of bounded_coefficient_encoding(kappa, mu), computed in closed form.
std::int64_t width_formula(std::int64_t kappa, std::int64_t mu);

/// c^t y. Throws ShapeError on length mismatch.
std::int64_t decode(std::span<const std::int64_t> c, std::span<const std::uint8_t> y);

/// True iff the subset sums of c are exactly {0, 1, ..., kappa}.
bool completeness_check(std::span<const std::int64_t> c, std::int64_t kappa);

/// counts[chi] = |{ y : c^t y = chi }| for chi = 0..sum(c). Exact; throws
/// CapacityError when 2^len(c) does not fit in 64 bits.
std::vector<std::uint64_t> code_word_counts(std::span<const std::int64_t> c);

/// One term of the right-hand side of a uniqueness constraint: coef * y_a
/// (one variable) or coef * y_a * y_b (two variables).
struct ConstraintTerm {
    std::int64_t coef = 0;
    std::vector<std::size_t> vars;

    bool operator==(const ConstraintTerm&) const = default;
};

/// sum_k lhs[k].first * y_{lhs[k].second}  >=  sum of rhs terms.
///
/// Variable indices are 0-based positions within the sequence.
struct UniquenessConstraint {
    std::vector<std::pair<std::int64_t, std::size_t>> lhs;
    std::vector<ConstraintTerm> rhs;

    bool operator==(const UniquenessConstraint&) const = default;
};

/// Inequalities on the binary variables of a bounded-coefficient sequence that
/// leave exactly one code word per integer value:
///   - the prefix must be at least 2^rho - mu before the first mu-entry is set,
///   - the non-prefix bits are set in order (y_k >= y_{k+1}),
///   - the prefix must be at least 2^rho - c_last before the last bit is set.
/// When 2^rho - c_last > mu the last right-hand side is rewritten as
/// mu * y_{d-2} y_{d-1} + (2^rho - mu - c_last) y_{d-1}.
///
/// Throws UnsupportedEncodingError for sequences from the binary branch,
/// which have no redundancy to remove.
std::vector<UniquenessConstraint> uniqueness_constraints(const BoundedConstruction& construction);

/// Per-variable integer encodings of a whole problem.
class IntEncoding {
 public:
    IntEncoding() = default;

    /// Throws DomainError for empty sequences or non-positive coefficients.
    explicit IntEncoding(std::vector<Coefficients> coefficients);

    /// Bounded-coefficient encoding of every variable. Each mu[i] is clamped to
    /// kappa[i] before construction, since larger bounds cannot be reached.
    static IntEncoding bounded(std::span<const std::int64_t> kappa,
                               std::span<const std::int64_t> mu);
    static IntEncoding binary(std::span<const std::int64_t> kappa);
    static IntEncoding unary(std::span<const std::int64_t> kappa);
    static IntEncoding make(EncodingScheme scheme, std::span<const std::int64_t> kappa,
                            std::span<const std::int64_t> mu = {});

    std::size_t num_variables() const { return coefficients_.size(); }
    const std::vector<Coefficients>& coefficients() const { return coefficients_; }
    const Coefficients& coefficients(std::size_t var) const { return coefficients_[var]; }

    /// Index of the first binary/spin variable of `var` in the flat layout.
    std::size_t block_start(std::size_t var) const { return starts_[var]; }
    std::size_t width(std::size_t var) const { return coefficients_[var].size(); }
    std::size_t total_width() const { return starts_.empty() ? 0 : starts_.back(); }

    /// sum_j c_j per variable; equals kappa for all built-in encodings.
    IntegerVector sums() const;

    /// Construction records, present only for bounded encodings built here.
    const std::vector<std::optional<BoundedConstruction>>& constructions() const {
        return constructions_;
    }

    bool operator==(const IntEncoding& other) const {
        return coefficients_ == other.coefficients_;
    }

 private:
    std::vector<Coefficients> coefficients_;
    std::vector<std::size_t> starts_;  // n + 1 prefix offsets
    std::vector<std::optional<BoundedConstruction>> constructions_;
};

/// Block-diagonal n x total_width matrix with c^{x_i} in row i.
std::vector<std::vector<std::int64_t>> build_encoding_matrix(const IntEncoding& enc);

}  // namespace intenc

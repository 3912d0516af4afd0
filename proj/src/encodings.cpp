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

#include "intenc/encodings.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "intenc/exceptions.hpp"

namespace intenc {

namespace {

// floor(log2(v)) for v >= 1
std::int64_t floor_log2(std::int64_t v) {
    return static_cast<std::int64_t>(std::bit_width(static_cast<std::uint64_t>(v))) - 1;
}

std::int64_t pow2(std::int64_t e) { return std::int64_t{1} << e; }

void check_kappa(std::int64_t kappa) {
    if (kappa < 1) throw DomainError("kappa must be >= 1, got " + std::to_string(kappa));
}

void check_kappa_mu(std::int64_t kappa, std::int64_t mu) {
    check_kappa(kappa);
    if (mu < 1) throw DomainError("mu must be >= 1, got " + std::to_string(mu));
    if (mu > kappa) {
        throw DomainError("mu must not exceed kappa (mu = " + std::to_string(mu) +
                          ", kappa = " + std::to_string(kappa) + ")");
    }
}

bool binary_branch(std::int64_t kappa, std::int64_t mu) {
    return kappa < pow2(floor_log2(mu) + 1);
}

}  // namespace

std::string_view to_string(EncodingScheme scheme) {
    switch (scheme) {
        case EncodingScheme::bounded:
            return "bounded";
        case EncodingScheme::binary:
            return "binary";
        case EncodingScheme::unary:
            return "unary";
    }
    return "unknown";
}

EncodingScheme parse_encoding_scheme(std::string_view name) {
    if (name == "bounded") return EncodingScheme::bounded;
    if (name == "binary") return EncodingScheme::binary;
    if (name == "unary") return EncodingScheme::unary;
    throw DomainError("unknown encoding scheme '" + std::string(name) + "'");
}

Coefficients binary_encoding(std::int64_t kappa) {
    check_kappa(kappa);
    const std::int64_t L = floor_log2(kappa);
    Coefficients c;
    c.reserve(L + 1);
    for (std::int64_t i = 0; i < L; ++i) c.push_back(pow2(i));
    // kappa >= 2^L, so the residual is at least 1 and never dropped
    c.push_back(kappa - (pow2(L) - 1));
    return c;
}

Coefficients unary_encoding(std::int64_t kappa) {
    check_kappa(kappa);
    return Coefficients(static_cast<std::size_t>(kappa), 1);
}

BoundedConstruction bounded_coefficient_construction(std::int64_t kappa, std::int64_t mu) {
    check_kappa_mu(kappa, mu);
    BoundedConstruction out;
    out.kappa = kappa;
    out.mu = mu;
    if (binary_branch(kappa, mu)) {
        out.binary_branch = true;
        out.coefficients = binary_encoding(kappa);
        return out;
    }
    out.rho = floor_log2(mu) + 1;
    out.nu = kappa - (pow2(out.rho) - 1);
    out.eta = out.nu / mu;
    for (std::int64_t i = 0; i < out.rho; ++i) out.coefficients.push_back(pow2(i));
    out.coefficients.insert(out.coefficients.end(), static_cast<std::size_t>(out.eta), mu);
    const std::int64_t residual = out.nu - out.eta * mu;
    if (residual != 0) out.coefficients.push_back(residual);
    return out;
}

Coefficients bounded_coefficient_encoding(std::int64_t kappa, std::int64_t mu) {
    return bounded_coefficient_construction(kappa, mu).coefficients;
}

std::int64_t width_formula(std::int64_t kappa, std::int64_t mu) {
    check_kappa_mu(kappa, mu);
    if (binary_branch(kappa, mu)) return floor_log2(kappa) + 1;
    const std::int64_t rho = floor_log2(mu) + 1;
    const std::int64_t nu = kappa - (pow2(rho) - 1);
    const std::int64_t eta = nu / mu;
    return nu - eta * mu != 0 ? rho + eta + 1 : rho + eta;
}

std::int64_t decode(std::span<const std::int64_t> c, std::span<const std::uint8_t> y) {
    if (c.size() != y.size()) {
        throw ShapeError("decode: " + std::to_string(y.size()) + " bits for " +
                         std::to_string(c.size()) + " coefficients");
    }
    std::int64_t x = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (y[j] > 1) throw DomainError("decode: bit " + std::to_string(j) + " is not 0 or 1");
        x += c[j] * y[j];
    }
    return x;
}

bool completeness_check(std::span<const std::int64_t> c, std::int64_t kappa) {
    if (kappa < 0) return false;
    std::int64_t total = 0;
    for (std::int64_t v : c) {
        if (v < 1) return false;
        total += v;
        // any reachable value above kappa already violates "only"
        if (total > kappa) return false;
    }
    if (total != kappa) return false;

    std::vector<char> reachable(static_cast<std::size_t>(kappa) + 1, 0);
    reachable[0] = 1;
    std::int64_t top = 0;
    for (std::int64_t v : c) {
        for (std::int64_t s = top; s >= 0; --s) {
            if (reachable[s]) reachable[s + v] = 1;
        }
        top += v;
    }
    return std::all_of(reachable.begin(), reachable.end(), [](char r) { return r != 0; });
}

std::vector<std::uint64_t> code_word_counts(std::span<const std::int64_t> c) {
    if (c.size() >= 64) {
        throw CapacityError("code word counts overflow 64 bits for width " +
                            std::to_string(c.size()));
    }
    std::int64_t total = 0;
    for (std::int64_t v : c) {
        if (v < 1) throw DomainError("coefficients must be positive");
        total += v;
    }
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(total) + 1, 0);
    counts[0] = 1;
    std::int64_t top = 0;
    for (std::int64_t v : c) {
        for (std::int64_t s = top; s >= 0; --s) counts[s + v] += counts[s];
        top += v;
    }
    return counts;
}

std::vector<UniquenessConstraint> uniqueness_constraints(const BoundedConstruction& cons) {
    if (cons.binary_branch) {
        throw UnsupportedEncodingError(
                "uniqueness constraints need a sequence with repeated mu entries; kappa = " +
                std::to_string(cons.kappa) + " with mu = " + std::to_string(cons.mu) +
                " is a plain binary sequence");
    }
    const auto& c = cons.coefficients;
    const std::size_t rho = static_cast<std::size_t>(cons.rho);
    const std::size_t d = c.size();
    if (rho == 0 || d <= rho) {
        throw UnsupportedEncodingError("construction record does not match its coefficients");
    }

    std::vector<std::pair<std::int64_t, std::size_t>> prefix;
    for (std::size_t j = 0; j < rho; ++j) prefix.emplace_back(c[j], j);
    const std::int64_t two_rho = pow2(cons.rho);

    std::vector<UniquenessConstraint> out;
    out.push_back({prefix, {{two_rho - cons.mu, {rho}}}});
    for (std::size_t k = rho; k + 1 < d; ++k) {
        out.push_back({{{1, k}}, {{1, {k + 1}}}});
    }

    const std::size_t last = d - 1;
    const std::int64_t gap = two_rho - c[last];
    // the product form needs a preceding mu-entry tied to the last bit by the chain
    if (gap > cons.mu && last >= rho + 1) {
        out.push_back({prefix,
                       {{cons.mu, {last - 1, last}}, {two_rho - cons.mu - c[last], {last}}}});
    } else {
        out.push_back({prefix, {{gap, {last}}}});
    }
    return out;
}

IntEncoding::IntEncoding(std::vector<Coefficients> coefficients)
        : coefficients_(std::move(coefficients)) {
    starts_.assign(1, 0);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        if (coefficients_[i].empty()) {
            throw DomainError("variable " + std::to_string(i) + " has an empty encoding");
        }
        for (std::int64_t v : coefficients_[i]) {
            if (v < 1) {
                throw DomainError("variable " + std::to_string(i) +
                                  " has a non-positive coefficient");
            }
        }
        starts_.push_back(starts_.back() + coefficients_[i].size());
    }
    constructions_.assign(coefficients_.size(), std::nullopt);
}

IntEncoding IntEncoding::bounded(std::span<const std::int64_t> kappa,
                                 std::span<const std::int64_t> mu) {
    if (kappa.size() != mu.size()) {
        throw ShapeError("bounded encoding needs one mu per variable");
    }
    std::vector<BoundedConstruction> cons;
    std::vector<Coefficients> coeffs;
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        cons.push_back(bounded_coefficient_construction(kappa[i], std::min(mu[i], kappa[i])));
        coeffs.push_back(cons.back().coefficients);
    }
    IntEncoding enc(std::move(coeffs));
    for (std::size_t i = 0; i < cons.size(); ++i) enc.constructions_[i] = std::move(cons[i]);
    return enc;
}

IntEncoding IntEncoding::binary(std::span<const std::int64_t> kappa) {
    std::vector<Coefficients> coeffs;
    for (std::int64_t k : kappa) coeffs.push_back(binary_encoding(k));
    return IntEncoding(std::move(coeffs));
}

IntEncoding IntEncoding::unary(std::span<const std::int64_t> kappa) {
    std::vector<Coefficients> coeffs;
    for (std::int64_t k : kappa) coeffs.push_back(unary_encoding(k));
    return IntEncoding(std::move(coeffs));
}

IntEncoding IntEncoding::make(EncodingScheme scheme, std::span<const std::int64_t> kappa,
                              std::span<const std::int64_t> mu) {
    switch (scheme) {
        case EncodingScheme::bounded:
            return bounded(kappa, mu);
        case EncodingScheme::binary:
            return binary(kappa);
        case EncodingScheme::unary:
            return unary(kappa);
    }
    throw DomainError("unknown encoding scheme");
}

IntegerVector IntEncoding::sums() const {
    IntegerVector out;
    out.reserve(coefficients_.size());
    for (const auto& c : coefficients_) {
        out.push_back(std::accumulate(c.begin(), c.end(), std::int64_t{0}));
    }
    return out;
}

std::vector<std::vector<std::int64_t>> build_encoding_matrix(const IntEncoding& enc) {
    std::vector<std::vector<std::int64_t>> C(enc.num_variables(),
                                             std::vector<std::int64_t>(enc.total_width(), 0));
    for (std::size_t i = 0; i < enc.num_variables(); ++i) {
        const auto& c = enc.coefficients(i);
        std::copy(c.begin(), c.end(), C[i].begin() + enc.block_start(i));
    }
    return C;
}

}  // namespace intenc

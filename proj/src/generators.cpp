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

#include "intenc/exceptions.hpp"
#include "intenc/resilience.hpp"

namespace intenc {

void InstanceSpec::validate() const {
    if (n < 1) throw DomainError("instance needs n >= 1");
    if (kappa < 1) throw DomainError("instance needs kappa >= 1");
    if (!(sparsity >= 0.0 && sparsity <= 1.0)) throw DomainError("sparsity must lie in [0, 1]");
    if (alpha_Q < 0 || alpha_q < 0) throw DomainError("alpha values must be >= 0");
}

namespace {

// Upper triangle in row-major order, mirrored. The diagonal is uniform on
// U_alpha; an off-diagonal entry is zero with probability `sparsity`,
// otherwise uniform on {+-1, ..., +-alpha}.
std::vector<std::vector<double>> draw_symmetric(std::size_t n, std::int64_t alpha, double sparsity,
                                                Rng& rng) {
    std::vector<std::vector<double>> Q(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            std::int64_t v = 0;
            if (i == j) {
                v = rng.uniform_int(-alpha, alpha);
            } else if (alpha > 0 && !rng.bernoulli(sparsity)) {
                v = rng.uniform_int(1, alpha);
                if (rng.bernoulli(0.5)) v = -v;
            }
            Q[i][j] = Q[j][i] = static_cast<double>(v);
        }
    }
    return Q;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const SquareMatrix& A) {
    const std::size_t n = A.size();
    std::vector<std::vector<double>> a = A.to_rows();
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) s += a[i][j] * a[i][j];
            }
        }
        return s;
    };
    double total = 0.0;
    for (const auto& row : a) {
        for (double v : row) total += v * v;
    }
    for (int sweep = 0; sweep < 100 && off_norm() > 1e-30 * std::max(total, 1.0); ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

ConvexInstance gen_convex_instance(const InstanceSpec& spec) {
    spec.validate();
    if (spec.family != InstanceFamily::convex) throw DomainError("spec is not a convex family");
    const std::size_t n = spec.n;
    Rng rng(spec.seed);

    auto rows = draw_symmetric(n, spec.alpha_Q, spec.sparsity, rng);
    const double lambda_min = symmetric_eigenvalues(SquareMatrix::from_rows(rows)).front();
    const double r = rng.uniform_open01();
    const double lambda = std::ceil(std::abs(std::min(lambda_min, 0.0)) + r);
    for (std::size_t i = 0; i < n; ++i) rows[i][i] += lambda;

    IntegerVector x(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rng.bernoulli(0.5)) x[i] = rng.uniform_int(1, spec.kappa);
    }
    std::vector<double> q(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) q[i] -= 2.0 * rows[i][j] * static_cast<double>(x[j]);
    }
    return {UiqpProblem(SquareMatrix::from_rows(rows), std::move(q),
                        IntegerVector(n, spec.kappa)),
            std::move(x)};
}

UiqpProblem gen_uniform_instance(const InstanceSpec& spec) {
    spec.validate();
    if (spec.family != InstanceFamily::uniform) throw DomainError("spec is not a uniform family");
    Rng rng(spec.seed);
    auto rows = draw_symmetric(spec.n, spec.alpha_Q, spec.sparsity, rng);
    std::vector<double> q(spec.n);
    for (double& v : q) v = static_cast<double>(rng.uniform_int(-spec.alpha_q, spec.alpha_q));
    return UiqpProblem(SquareMatrix::from_rows(rows), std::move(q),
                       IntegerVector(spec.n, spec.kappa));
}

UiqpProblem generate_instance(const InstanceSpec& spec) {
    if (spec.family == InstanceFamily::convex) return gen_convex_instance(spec).problem;
    return gen_uniform_instance(spec);
}

InstanceSpec parse_instance_spec(const nlohmann::json& j) {
    try {
        InstanceSpec s;
        const std::string family = j.at("family").get<std::string>();
        if (family == "convex") {
            s.family = InstanceFamily::convex;
        } else if (family == "uniform") {
            s.family = InstanceFamily::uniform;
        } else {
            throw ParseError("unknown instance family \"" + family + "\"");
        }
        s.n = j.value("n", s.n);
        s.kappa = j.value("kappa", s.kappa);
        s.sparsity = j.value("sparsity", s.sparsity);
        s.alpha_Q = j.value("alpha_Q", s.alpha_Q);
        s.alpha_q = j.value("alpha_q", s.alpha_q);
        s.seed = j.at("seed").get<std::uint64_t>();
        s.validate();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance spec: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(std::string("instance spec: ") + e.what());
    }
}

nlohmann::json instance_spec_to_json(const InstanceSpec& spec) {
    nlohmann::json j;
    j["family"] = spec.family == InstanceFamily::convex ? "convex" : "uniform";
    j["n"] = spec.n;
    j["kappa"] = spec.kappa;
    j["sparsity"] = spec.sparsity;
    j["alpha_Q"] = spec.alpha_Q;
    j["alpha_q"] = spec.alpha_q;
    j["seed"] = spec.seed;
    return j;
}

}  // namespace intenc

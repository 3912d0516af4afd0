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
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "intenc/bound_finder.hpp"
#include "intenc/encodings.hpp"
#include "intenc/exact_solver.hpp"
#include "intenc/model.hpp"
#include "intenc/rng.hpp"

namespace intenc {

// ---------------------------------------------------------------- noise

struct NoiseSpec {
    double epsilon = 0.0;  // standard deviation
    std::size_t n_trials = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class SameCriterion {
    intersect,  // perturbed argmin set meets the unperturbed one
    equal,      // the two argmin sets coincide
};

struct NoiseOptions {
    bool perturb_fields = true;
    // Also draw noise for coupler slots absent from the model.
    bool perturb_absent_couplers = false;
    SameCriterion same = SameCriterion::intersect;
};

/// Adds N(0, epsilon) to the fields, then to the couplers in ascending
/// (i, j) order. The offset is left alone.
IsingModel perturb(const IsingModel& m, double epsilon, Rng& rng, const NoiseOptions& opts = {});

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    bool same = false;
};

struct ResilienceOutcome {
    double R = 0.0;
    std::size_t n_same = 0;
    std::vector<TrialRecord> trials;
};

/// Seed of trial `t` inside a cell seeded with `cell_seed`.
std::uint64_t trial_seed(std::uint64_t cell_seed, std::size_t t);

/// Fraction of noisy trials whose ground states agree with those of `m`.
/// `m` is expected to be scaled already.
ResilienceOutcome resilience(const IsingModel& m, const NoiseSpec& spec,
                             const NoiseOptions& opts = {});

/// Same as above with the unperturbed ground states supplied by the caller.
ResilienceOutcome resilience(const IsingModel& m, const GroundStateResult& g0,
                             const NoiseSpec& spec, const NoiseOptions& opts = {});

/// True when trial ground states `g` agree with `g0` under `criterion`.
bool same_ground_states(const GroundStateResult& g0, const GroundStateResult& g,
                        SameCriterion criterion);

// ----------------------------------------------------------- generators

enum class InstanceFamily { convex, uniform };

struct InstanceSpec {
    InstanceFamily family = InstanceFamily::convex;
    std::size_t n = 3;
    std::int64_t kappa = 12;
    double sparsity = 0.5;  // probability that an off-diagonal entry is zero
    std::int64_t alpha_Q = 2;
    std::int64_t alpha_q = 0;  // uniform family only
    std::uint64_t seed = 0;

    void validate() const;
};

struct ConvexInstance {
    UiqpProblem problem;
    IntegerVector planted;
};

/// Integer Q with a positive definite shift and q = -2 Q x*, so that the
/// planted x* is the unique minimizer over the box.
ConvexInstance gen_convex_instance(const InstanceSpec& spec);

UiqpProblem gen_uniform_instance(const InstanceSpec& spec);

/// Dispatches on spec.family.
UiqpProblem generate_instance(const InstanceSpec& spec);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> symmetric_eigenvalues(const SquareMatrix& A);

InstanceSpec parse_instance_spec(const nlohmann::json& j);
nlohmann::json instance_spec_to_json(const InstanceSpec& spec);

// ----------------------------------------------------------- experiment

struct ExperimentInstance {
    std::string id;
    UiqpProblem problem;
};

struct ExperimentConfig {
    std::vector<ExperimentInstance> instances;
    std::vector<EncodingScheme> encodings{EncodingScheme::bounded, EncodingScheme::binary};
    std::vector<double> epsilons;
    std::size_t n_trials = 10;
    PrecisionConfig precision;
    NoiseOptions noise;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Desk-scale protocol: five convex and five uniform instances with n = 3
/// and kappa = 12, epsilon in {0, 0.001, ..., 0.01}, ten trials.
ExperimentConfig desk_scale_config(std::uint64_t seed);

/// Reads an experiment config. Instance entries are either generator specs
/// or paths to problem files, resolved against `base_dir`. A spec without
/// a seed gets one derived from `seed` and its position.
ExperimentConfig parse_experiment_config(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir, std::uint64_t seed);

enum class CellStatus { ok, capacity, infeasible };

std::string_view to_string(CellStatus status);

struct CellResult {
    std::string instance;
    EncodingScheme encoding = EncodingScheme::bounded;
    std::size_t epsilon_index = 0;
    double epsilon = 0.0;
    std::size_t num_spins = 0;
    std::size_t n_same = 0;
    std::size_t n_trials = 0;
    double R = 0.0;
    CellStatus status = CellStatus::ok;
    std::string message;
    std::vector<TrialRecord> trials;
};

struct SummaryRow {
    EncodingScheme encoding = EncodingScheme::bounded;
    double epsilon = 0.0;
    double mean_R = 0.0;
    std::size_t n_instances = 0;  // cells that were not skipped
};

struct ResilienceReport {
    std::vector<CellResult> cells;  // by (instance, encoding, epsilon)
    std::vector<SummaryRow> summary;
};

/// Substream seed of one (instance, encoding, epsilon) cell.
std::uint64_t cell_seed(std::uint64_t master, std::size_t instance, std::size_t encoding,
                        std::size_t epsilon_index);

/// Runs every cell. Output does not depend on `workers`.
ResilienceReport run_experiment(const ExperimentConfig& config, std::size_t workers = 1);

/// Shortest decimal string that parses back to `v`.
std::string format_real(double v);

/// instance,encoding,epsilon,trial,same
std::string trials_csv(const ResilienceReport& report);
/// instance,encoding,epsilon,num_spins,n_same,n_trials,R,status
std::string cells_csv(const ResilienceReport& report);
/// encoding,epsilon,mean_R,n_instances
std::string summary_csv(const ResilienceReport& report);

}  // namespace intenc

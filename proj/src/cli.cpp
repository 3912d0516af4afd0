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

#include "intenc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "intenc/bound_finder.hpp"
#include "intenc/encodings.hpp"
#include "intenc/exact_solver.hpp"
#include "intenc/exceptions.hpp"
#include "intenc/json_io.hpp"
#include "intenc/resilience.hpp"
#include "intenc/transform.hpp"

namespace intenc {

namespace {

namespace fs = std::filesystem;

// Writes to `path`, or to `out` when the path is empty.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

void warn_if_symmetrized(const LoadedProblem& lp, std::ostream& err) {
    if (lp.symmetrized) err << "warning: Q was not symmetric; using (Q + Q^T) / 2\n";
}

struct EncodeArgs {
    std::int64_t kappa = 0;
    std::optional<std::int64_t> mu;
    std::string scheme = "bounded";
    bool constraints = false;
};

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
    const EncodingScheme scheme = parse_encoding_scheme(a.scheme);
    json j;
    j["kappa"] = a.kappa;
    j["scheme"] = a.scheme;
    Coefficients c;
    if (scheme == EncodingScheme::bounded) {
        if (!a.mu) throw DomainError("--mu is required for the bounded scheme");
        const BoundedConstruction bc = bounded_coefficient_construction(a.kappa, *a.mu);
        c = bc.coefficients;
        j["mu"] = *a.mu;
        if (a.constraints) {
            j["constraints"] = bc.binary_branch ? json::array()
                                                : constraints_to_json(uniqueness_constraints(bc));
        }
    } else {
        c = scheme == EncodingScheme::binary ? binary_encoding(a.kappa) : unary_encoding(a.kappa);
    }
    j["width"] = c.size();
    j["coefficients"] = c;
    out << canonical_dump(j);
    return kExitOk;
}

struct BoundsArgs {
    std::string input;
    std::string output;
    double epsilon_l = 0.01;
    double epsilon_c = 0.01;
    std::string target = "spin";
    std::string variant = "decrement";
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out, std::ostream& err) {
    const LoadedProblem lp = load_problem(a.input);
    warn_if_symmetrized(lp, err);
    PrecisionConfig cfg{a.epsilon_l, a.epsilon_c};
    cfg.validate();
    MuResult r;
    if (a.target == "spin") {
        r = find_mu_spin(lp.problem, cfg);
    } else {
        const auto variant = a.variant == "below_minimizer" ? LinearAdjustVariant::below_minimizer
                                                            : LinearAdjustVariant::decrement;
        r = find_mu_qubo(lp.problem, cfg, variant);
    }
    for (const auto& w : r.warnings) err << "warning: " << w << "\n";
    emit(canonical_dump(mu_result_to_json(r)), a.output, out);
    return kExitOk;
}

struct ConvertArgs {
    std::string input;
    std::string output;
    std::string target = "ising";
    std::string encoding = "bounded";
    std::string mu_from;
    double epsilon_l = 0.01;
    double epsilon_c = 0.01;
    bool scale = false;
    std::string encoding_out;
};

int cmd_convert(const ConvertArgs& a, std::ostream& out, std::ostream& err) {
    const LoadedProblem lp = load_problem(a.input);
    warn_if_symmetrized(lp, err);
    const UiqpProblem& p = lp.problem;
    const EncodingScheme scheme = parse_encoding_scheme(a.encoding);
    const bool ising = a.target == "ising";

    IntegerVector mu;
    if (scheme == EncodingScheme::bounded) {
        constexpr std::string_view uniform_prefix = "uniform:";
        if (a.mu_from.starts_with(uniform_prefix)) {
            std::int64_t value = 0;
            const std::string_view digits = std::string_view(a.mu_from).substr(uniform_prefix.size());
            const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size() || value < 1) {
                throw DomainError("--mu-from uniform:<int> needs a positive integer");
            }
            mu.assign(p.num_variables(), value);
        } else if (!a.mu_from.empty()) {
            mu = parse_mu(read_json_file(a.mu_from));
            if (mu.size() != p.num_variables()) {
                throw ParseError("bounds file has " + std::to_string(mu.size()) +
                                 " entries, problem has " + std::to_string(p.num_variables()));
            }
        } else {
            PrecisionConfig cfg{a.epsilon_l, a.epsilon_c};
            cfg.validate();
            mu = ising ? find_mu_spin(p, cfg).mu : find_mu_qubo(p, cfg).mu;
        }
    }
    const IntEncoding enc = IntEncoding::make(scheme, p.kappa(), mu);
    if (!a.encoding_out.empty()) store_encoding(enc, a.encoding_out);

    if (ising) {
        IsingModel m = uiqp_to_ising(p, enc);
        if (a.scale) m = scale_ising(m);
        emit(canonical_dump(ising_to_json(m)), a.output, out);
    } else {
        emit(canonical_dump(qubo_to_json(uiqp_to_qubo(p, enc))), a.output, out);
    }
    return kExitOk;
}

struct SolveArgs {
    std::string input;
    std::string output;
    double tol = kDefaultTieTolerance;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
    const IsingModel m = load_ising(a.input);
    emit(canonical_dump(ground_states_to_json(ground_states(m, a.tol))), a.output, out);
    return kExitOk;
}

struct GenArgs {
    std::string family = "convex";
    std::size_t n = 3;
    std::int64_t kappa = 12;
    double sparsity = 0.5;
    std::int64_t alpha_Q = 2;
    std::int64_t alpha_q = 0;
    std::optional<std::uint64_t> seed;
    std::string output;
    std::string planted;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    InstanceSpec spec;
    if (a.family == "convex") {
        spec.family = InstanceFamily::convex;
    } else {
        spec.family = InstanceFamily::uniform;
    }
    spec.n = a.n;
    spec.kappa = a.kappa;
    spec.sparsity = a.sparsity;
    spec.alpha_Q = a.alpha_Q;
    spec.alpha_q = a.alpha_q;
    spec.seed = *a.seed;
    if (spec.family == InstanceFamily::convex) {
        const ConvexInstance inst = gen_convex_instance(spec);
        emit(canonical_dump(problem_to_json(inst.problem)), a.output, out);
        if (!a.planted.empty()) write_json_file(a.planted, json{{"x", inst.planted}});
    } else {
        if (!a.planted.empty()) throw DomainError("--planted applies to the convex family only");
        emit(canonical_dump(problem_to_json(gen_uniform_instance(spec))), a.output, out);
    }
    return kExitOk;
}

struct ResilienceArgs {
    std::optional<std::uint64_t> seed;
    std::string config;
    std::string input;
    std::string out_dir;
    std::vector<double> epsilons;
    std::optional<std::size_t> trials;
    std::size_t workers = 1;
};

int cmd_resilience(const ResilienceArgs& a, std::ostream& out) {
    if (a.workers < 1) throw DomainError("--workers must be >= 1");
    if (!a.input.empty()) {
        // single model: scale, then one row per epsilon
        const IsingModel m = scale_ising(load_ising(a.input));
        const GroundStateResult g0 = ground_states(m);
        const std::vector<double> eps =
                a.epsilons.empty() ? desk_scale_config(0).epsilons : a.epsilons;
        std::string csv = "epsilon,n_same,n_trials,R\n";
        for (std::size_t k = 0; k < eps.size(); ++k) {
            const NoiseSpec spec{eps[k], a.trials.value_or(10), cell_seed(*a.seed, 0, 0, k)};
            const ResilienceOutcome r = resilience(m, g0, spec);
            csv += format_real(eps[k]) + ',' + std::to_string(r.n_same) + ',' +
                   std::to_string(spec.n_trials) + ',' + format_real(r.R) + '\n';
        }
        emit(csv, a.out_dir.empty() ? "" : (fs::path(a.out_dir) / "resilience.csv").string(),
             out);
        return kExitOk;
    }

    ExperimentConfig cfg =
            a.config.empty()
                    ? desk_scale_config(*a.seed)
                    : parse_experiment_config(read_json_file(a.config),
                                              fs::path(a.config).parent_path(), *a.seed);
    if (!a.epsilons.empty()) cfg.epsilons = a.epsilons;
    if (a.trials) cfg.n_trials = *a.trials;
    const ResilienceReport report = run_experiment(cfg, a.workers);

    if (a.out_dir.empty()) {
        out << summary_csv(report);
    } else {
        fs::create_directories(a.out_dir);
        write_text_file(fs::path(a.out_dir) / "trials.csv", trials_csv(report));
        write_text_file(fs::path(a.out_dir) / "cells.csv", cells_csv(report));
        write_text_file(fs::path(a.out_dir) / "summary.csv", summary_csv(report));
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounded-integer quadratic programs to Ising and QUBO models", "intenc"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for every subcommand");

    const std::vector<std::string> schemes{"bounded", "binary", "unary"};
    auto positive = CLI::PositiveNumber;
    auto precision = CLI::Range(0.0, 1.0).description("in (0, 1]");

    EncodeArgs enc;
    auto* s_encode = app.add_subcommand("encode", "Print the coefficient sequence of one variable");
    s_encode->add_option("--kappa", enc.kappa, "Upper bound of the integer variable")
            ->required()
            ->check(positive);
    s_encode->add_option("--mu", enc.mu, "Coefficient bound (bounded scheme)")->check(positive);
    s_encode->add_option("--scheme", enc.scheme, "Encoding scheme")
            ->check(CLI::IsMember(schemes))
            ->capture_default_str();
    s_encode->add_flag("--constraints", enc.constraints,
                       "Include the uniqueness constraints of a bounded encoding");

    BoundsArgs bounds;
    auto* s_bounds = app.add_subcommand("bounds", "Find per-variable coefficient bounds mu");
    s_bounds->add_option("--input", bounds.input, "Problem JSON")->required()->check(CLI::ExistingFile);
    s_bounds->add_option("--output", bounds.output, "Output path (default: stdout)");
    s_bounds->add_option("--epsilon-l", bounds.epsilon_l,
                         "Minimum ratio min/max of linear coefficient magnitudes")
            ->check(precision)
            ->capture_default_str();
    s_bounds->add_option("--epsilon-c", bounds.epsilon_c,
                         "Minimum ratio min/max of quadratic coefficient magnitudes")
            ->check(precision)
            ->capture_default_str();
    s_bounds->add_option("--target", bounds.target, "Target model")
            ->check(CLI::IsMember({"spin", "qubo"}))
            ->capture_default_str();
    s_bounds->add_option("--variant", bounds.variant, "Linear adjustment rule (qubo target)")
            ->check(CLI::IsMember({"decrement", "below_minimizer"}))
            ->capture_default_str();

    ConvertArgs conv;
    auto* s_convert = app.add_subcommand("convert", "Encode a problem as an Ising or QUBO model");
    s_convert->add_option("--input", conv.input, "Problem JSON")->required()->check(CLI::ExistingFile);
    s_convert->add_option("--output", conv.output, "Output path (default: stdout)");
    s_convert->add_option("--target", conv.target, "Output model")
            ->check(CLI::IsMember({"ising", "qubo"}))
            ->capture_default_str();
    s_convert->add_option("--encoding", conv.encoding, "Encoding scheme")
            ->check(CLI::IsMember(schemes))
            ->capture_default_str();
    s_convert->add_option("--mu-from", conv.mu_from,
                          "Coefficient bounds: a bounds JSON file or uniform:<int> "
                          "(default: computed from the epsilon flags)");
    s_convert->add_option("--epsilon-l", conv.epsilon_l,
                          "Linear ratio used when mu is computed here")
            ->check(precision)
            ->capture_default_str();
    s_convert->add_option("--epsilon-c", conv.epsilon_c,
                          "Quadratic ratio used when mu is computed here")
            ->check(precision)
            ->capture_default_str();
    s_convert->add_flag("--scale", conv.scale, "Scale the Ising model so that max |J| = 1");
    s_convert->add_option("--encoding-out", conv.encoding_out, "Also write the encoding JSON here");

    SolveArgs solve;
    auto* s_solve = app.add_subcommand("solve", "Exact ground states of an Ising model");
    s_solve->add_option("--input", solve.input, "Ising JSON")->required()->check(CLI::ExistingFile);
    s_solve->add_option("--output", solve.output, "Output path (default: stdout)");
    s_solve->add_option("--tol", solve.tol, "Absolute energy tolerance for ties")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();

    GenArgs gen;
    auto* s_gen = app.add_subcommand("gen", "Generate a random problem instance");
    s_gen->add_option("--family", gen.family, "Instance family")
            ->check(CLI::IsMember({"convex", "uniform"}))
            ->capture_default_str();
    s_gen->add_option("--n", gen.n, "Number of variables")->check(positive)->capture_default_str();
    s_gen->add_option("--kappa", gen.kappa, "Upper bound of every variable")
            ->check(positive)
            ->capture_default_str();
    s_gen->add_option("--sparsity", gen.sparsity,
                      "Probability that an off-diagonal entry of Q is zero")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
    s_gen->add_option("--alpha-Q", gen.alpha_Q, "Q entries lie in {0, +-1, ..., +-alpha}")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
    s_gen->add_option("--alpha-q", gen.alpha_q, "q entries lie in {0, +-1, ..., +-alpha} (uniform)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
    s_gen->add_option("--seed", gen.seed, "64-bit random seed")->required();
    s_gen->add_option("--output", gen.output, "Output path (default: stdout)");
    s_gen->add_option("--planted", gen.planted, "Write the planted minimizer here (convex)");

    ResilienceArgs res;
    auto* s_res = app.add_subcommand("resilience", "Noise resilience of encoded models");
    s_res->add_option("--seed", res.seed, "64-bit master seed")->required();
    auto* cfg_opt = s_res->add_option("--config", res.config,
                                      "Experiment config JSON (default: desk-scale protocol)")
                            ->check(CLI::ExistingFile);
    s_res->add_option("--input", res.input, "Measure a single Ising model instead")
            ->check(CLI::ExistingFile)
            ->excludes(cfg_opt);
    s_res->add_option("--out-dir", res.out_dir,
                      "Directory for trials.csv, cells.csv and summary.csv (default: summary to stdout)");
    s_res->add_option("--epsilon", res.epsilons, "Noise standard deviations (repeatable)")
            ->check(CLI::NonNegativeNumber);
    s_res->add_option("--trials", res.trials, "Trials per cell")->check(positive);
    s_res->add_option("--workers", res.workers, "Worker threads")->check(positive)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitDomain;
    }

    try {
        if (*s_encode) return cmd_encode(enc, out);
        if (*s_bounds) return cmd_bounds(bounds, out, err);
        if (*s_convert) return cmd_convert(conv, out, err);
        if (*s_solve) return cmd_solve(solve, out);
        if (*s_gen) return cmd_gen(gen, out);
        if (*s_res) return cmd_resilience(res, out);
    } catch (const InfeasiblePrecisionError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const CapacityError& e) {
        err << "capacity: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitDomain;
}

}  // namespace intenc

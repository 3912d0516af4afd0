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

#include "intenc/resilience.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "intenc/exceptions.hpp"
#include "intenc/json_io.hpp"
#include "intenc/transform.hpp"

namespace intenc {

void NoiseSpec::validate() const {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw DomainError("epsilon must be a finite value >= 0");
    }
    if (n_trials < 1) throw DomainError("n_trials must be >= 1");
}

IsingModel perturb(const IsingModel& m, double epsilon, Rng& rng, const NoiseOptions& opts) {
    if (!(epsilon >= 0.0)) throw DomainError("epsilon must be >= 0");
    if (epsilon == 0.0) return m;

    std::vector<double> h = m.h();
    if (opts.perturb_fields) {
        for (double& v : h) v += epsilon * rng.normal();
    }
    IsingModel::CouplerMap J = m.J();
    if (opts.perturb_absent_couplers) {
        const std::size_t n = m.num_spins();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) J[{i, j}] += epsilon * rng.normal();
        }
    } else {
        for (auto& [key, v] : J) v += epsilon * rng.normal();
    }
    return IsingModel(std::move(h), std::move(J), m.offset());
}

std::uint64_t trial_seed(std::uint64_t cell_seed, std::size_t t) {
    return derive_seed(cell_seed, {static_cast<std::uint64_t>(t)});
}

bool same_ground_states(const GroundStateResult& g0, const GroundStateResult& g,
                        SameCriterion criterion) {
    // both state lists are sorted
    if (criterion == SameCriterion::equal) return g0.states == g.states;
    auto a = g0.states.begin();
    auto b = g.states.begin();
    while (a != g0.states.end() && b != g.states.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            return true;
        }
    }
    return false;
}

ResilienceOutcome resilience(const IsingModel& m, const GroundStateResult& g0,
                             const NoiseSpec& spec, const NoiseOptions& opts) {
    spec.validate();
    ResilienceOutcome out;
    for (std::size_t t = 0; t < spec.n_trials; ++t) {
        TrialRecord rec;
        rec.trial = t;
        rec.seed = trial_seed(spec.seed, t);
        if (spec.epsilon == 0.0) {
            rec.same = true;
        } else {
            Rng rng(rec.seed);
            const GroundStateResult g = ground_states(perturb(m, spec.epsilon, rng, opts),
                                                      g0.tolerance);
            rec.same = same_ground_states(g0, g, opts.same);
        }
        out.n_same += rec.same ? 1 : 0;
        out.trials.push_back(rec);
    }
    out.R = static_cast<double>(out.n_same) / static_cast<double>(spec.n_trials);
    return out;
}

ResilienceOutcome resilience(const IsingModel& m, const NoiseSpec& spec, const NoiseOptions& opts) {
    spec.validate();
    return resilience(m, ground_states(m), spec, opts);
}

// ------------------------------------------------------------ experiment

void ExperimentConfig::validate() const {
    if (instances.empty()) throw DomainError("experiment has no instances");
    if (encodings.empty()) throw DomainError("experiment has no encodings");
    if (epsilons.empty()) throw DomainError("experiment has no epsilon values");
    for (double e : epsilons) NoiseSpec{e, n_trials, 0}.validate();
    precision.validate();
}

ExperimentConfig desk_scale_config(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.seed = seed;
    cfg.epsilons.push_back(0.0);
    for (int k = 1; k <= 10; ++k) cfg.epsilons.push_back(k / 1000.0);

    // (alpha_Q, alpha_q) pairs of the uniform data sets
    const std::pair<std::int64_t, std::int64_t> uniform_pairs[] = {
            {2, 200}, {5, 200}, {5, 10}, {5, 100}, {10, 0}};
    std::vector<InstanceSpec> specs;
    for (std::size_t k = 0; k < 5; ++k) {
        InstanceSpec s;
        s.family = InstanceFamily::convex;
        s.alpha_Q = 2;
        specs.push_back(s);
    }
    for (const auto& [aQ, aq] : uniform_pairs) {
        InstanceSpec s;
        s.family = InstanceFamily::uniform;
        s.alpha_Q = aQ;
        s.alpha_q = aq;
        specs.push_back(s);
    }
    for (std::size_t k = 0; k < specs.size(); ++k) {
        specs[k].seed = derive_seed(seed, {0x696e7374ULL, k});
        const std::string prefix =
                specs[k].family == InstanceFamily::convex ? "convex-" : "uniform-";
        cfg.instances.push_back({prefix + std::to_string(k), generate_instance(specs[k])});
    }
    return cfg;
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir,
                                         std::uint64_t seed) {
    if (!j.is_object()) throw ParseError("experiment config must be a JSON object");
    try {
        ExperimentConfig cfg;
        cfg.seed = seed;
        if (!j.contains("instances") || !j["instances"].is_array()) {
            throw ParseError("experiment config needs an \"instances\" array");
        }
        std::size_t k = 0;
        for (const auto& entry : j["instances"]) {
            std::string id = "instance-" + std::to_string(k);
            if (entry.is_string()) {
                const std::filesystem::path path = base_dir / entry.get<std::string>();
                cfg.instances.push_back({std::move(id), load_problem(path).problem});
            } else {
                nlohmann::json spec_json = entry;
                if (entry.contains("id")) {
                    id = entry["id"].get<std::string>();
                    spec_json.erase("id");
                }
                if (!spec_json.contains("seed")) {
                    spec_json["seed"] = derive_seed(seed, {0x696e7374ULL, k});
                }
                cfg.instances.push_back({std::move(id),
                                         generate_instance(parse_instance_spec(spec_json))});
            }
            ++k;
        }
        if (j.contains("encodings")) {
            cfg.encodings.clear();
            for (const auto& e : j["encodings"]) {
                cfg.encodings.push_back(parse_encoding_scheme(e.get<std::string>()));
            }
        }
        if (j.contains("epsilons")) {
            cfg.epsilons = j["epsilons"].get<std::vector<double>>();
        } else {
            cfg.epsilons = desk_scale_config(seed).epsilons;
        }
        cfg.n_trials = j.value("n_trials", cfg.n_trials);
        cfg.precision.epsilon_l = j.value("epsilon_l", cfg.precision.epsilon_l);
        cfg.precision.epsilon_c = j.value("epsilon_c", cfg.precision.epsilon_c);
        cfg.noise.perturb_fields = j.value("perturb_fields", cfg.noise.perturb_fields);
        cfg.noise.perturb_absent_couplers =
                j.value("perturb_absent_couplers", cfg.noise.perturb_absent_couplers);
        const std::string same = j.value("same", std::string("intersect"));
        if (same == "intersect") {
            cfg.noise.same = SameCriterion::intersect;
        } else if (same == "equal") {
            cfg.noise.same = SameCriterion::equal;
        } else {
            throw ParseError("\"same\" must be \"intersect\" or \"equal\"");
        }
        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("experiment config: ") + e.what());
    }
}

std::string_view to_string(CellStatus status) {
    switch (status) {
        case CellStatus::ok:
            return "ok";
        case CellStatus::capacity:
            return "capacity";
        case CellStatus::infeasible:
            return "infeasible";
    }
    return "unknown";
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t instance, std::size_t encoding,
                        std::size_t epsilon_index) {
    return derive_seed(master, {static_cast<std::uint64_t>(instance),
                                static_cast<std::uint64_t>(encoding),
                                static_cast<std::uint64_t>(epsilon_index)});
}

namespace {

// Runs fn(0..count-1) on up to `workers` threads. The first exception
// thrown by any task is rethrown after all threads have joined.
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k; (k = next.fetch_add(1)) < count;) {
                    try {
                        fn(k);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

struct PreparedModel {
    CellStatus status = CellStatus::ok;
    std::string message;
    std::optional<IsingModel> model;
    GroundStateResult g0;
};

PreparedModel prepare(const UiqpProblem& p, EncodingScheme scheme, const PrecisionConfig& precision) {
    PreparedModel out;
    try {
        IntEncoding enc = IntEncoding::binary(p.kappa());
        if (scheme == EncodingScheme::bounded) {
            enc = IntEncoding::bounded(p.kappa(), find_mu_spin(p, precision).mu);
        } else if (scheme == EncodingScheme::unary) {
            enc = IntEncoding::unary(p.kappa());
        }
        if (enc.total_width() > kMaxExactSpins) {
            throw CapacityError("encoding needs " + std::to_string(enc.total_width()) +
                                " spins, exact solver limit is " +
                                std::to_string(kMaxExactSpins));
        }
        out.model = scale_ising(uiqp_to_ising(p, enc));
        out.g0 = ground_states(*out.model);
    } catch (const CapacityError& e) {
        out.status = CellStatus::capacity;
        out.message = e.what();
    } catch (const InfeasiblePrecisionError& e) {
        out.status = CellStatus::infeasible;
        out.message = e.what();
    } catch (const StructuralError& e) {
        out.status = CellStatus::infeasible;
        out.message = e.what();
    }
    return out;
}

}  // namespace

ResilienceReport run_experiment(const ExperimentConfig& config, std::size_t workers) {
    config.validate();
    const std::size_t n_inst = config.instances.size();
    const std::size_t n_enc = config.encodings.size();
    const std::size_t n_eps = config.epsilons.size();
    const std::size_t n_trials = config.n_trials;

    std::vector<PreparedModel> prepared(n_inst * n_enc);
    parallel_for(prepared.size(), workers, [&](std::size_t k) {
        prepared[k] = prepare(config.instances[k / n_enc].problem, config.encodings[k % n_enc],
                              config.precision);
    });

    ResilienceReport report;
    report.cells.resize(n_inst * n_enc * n_eps);
    for (std::size_t i = 0; i < n_inst; ++i) {
        for (std::size_t e = 0; e < n_enc; ++e) {
            const PreparedModel& pm = prepared[i * n_enc + e];
            for (std::size_t k = 0; k < n_eps; ++k) {
                CellResult& cell = report.cells[(i * n_enc + e) * n_eps + k];
                cell.instance = config.instances[i].id;
                cell.encoding = config.encodings[e];
                cell.epsilon_index = k;
                cell.epsilon = config.epsilons[k];
                cell.status = pm.status;
                cell.message = pm.message;
                if (pm.status != CellStatus::ok) continue;
                cell.num_spins = pm.model->num_spins();
                cell.n_trials = n_trials;
                cell.trials.resize(n_trials);
            }
        }
    }

    // one task per trial; each writes only its own record
    parallel_for(report.cells.size() * n_trials, workers, [&](std::size_t task) {
        CellResult& cell = report.cells[task / n_trials];
        if (cell.status != CellStatus::ok) return;
        const std::size_t t = task % n_trials;
        const std::size_t c = task / n_trials;
        const std::size_t inst = c / (n_enc * n_eps);
        const std::size_t enc = (c / n_eps) % n_enc;
        const PreparedModel& pm = prepared[inst * n_enc + enc];
        const NoiseSpec spec{cell.epsilon, 1, 0};
        const std::uint64_t seed =
                trial_seed(cell_seed(config.seed, inst, enc, cell.epsilon_index), t);

        TrialRecord rec{t, seed, true};
        if (spec.epsilon != 0.0) {
            Rng rng(seed);
            const GroundStateResult g =
                    ground_states(perturb(*pm.model, spec.epsilon, rng, config.noise), pm.g0.tolerance);
            rec.same = same_ground_states(pm.g0, g, config.noise.same);
        }
        cell.trials[t] = rec;
    });

    for (CellResult& cell : report.cells) {
        if (cell.status != CellStatus::ok) continue;
        cell.n_same = static_cast<std::size_t>(
                std::count_if(cell.trials.begin(), cell.trials.end(),
                              [](const TrialRecord& r) { return r.same; }));
        cell.R = static_cast<double>(cell.n_same) / static_cast<double>(cell.n_trials);
    }

    for (std::size_t e = 0; e < n_enc; ++e) {
        for (std::size_t k = 0; k < n_eps; ++k) {
            SummaryRow row;
            row.encoding = config.encodings[e];
            row.epsilon = config.epsilons[k];
            double total = 0.0;
            for (std::size_t i = 0; i < n_inst; ++i) {
                const CellResult& cell = report.cells[(i * n_enc + e) * n_eps + k];
                if (cell.status != CellStatus::ok) continue;
                total += cell.R;
                ++row.n_instances;
            }
            row.mean_R = row.n_instances ? total / static_cast<double>(row.n_instances) : 0.0;
            report.summary.push_back(row);
        }
    }
    return report;
}

std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trials_csv(const ResilienceReport& report) {
    std::string out = "instance,encoding,epsilon,trial,same\n";
    for (const CellResult& cell : report.cells) {
        for (const TrialRecord& r : cell.trials) {
            out += cell.instance + ',' + std::string(to_string(cell.encoding)) + ',' +
                   format_real(cell.epsilon) + ',' + std::to_string(r.trial) + ',' +
                   (r.same ? '1' : '0') + '\n';
        }
    }
    return out;
}

std::string cells_csv(const ResilienceReport& report) {
    std::string out = "instance,encoding,epsilon,num_spins,n_same,n_trials,R,status\n";
    for (const CellResult& cell : report.cells) {
        out += cell.instance + ',' + std::string(to_string(cell.encoding)) + ',' +
               format_real(cell.epsilon) + ',' + std::to_string(cell.num_spins) + ',' +
               std::to_string(cell.n_same) + ',' + std::to_string(cell.n_trials) + ',' +
               format_real(cell.R) + ',' + std::string(to_string(cell.status)) + '\n';
    }
    return out;
}

std::string summary_csv(const ResilienceReport& report) {
    std::string out = "encoding,epsilon,mean_R,n_instances\n";
    for (const SummaryRow& row : report.summary) {
        out += std::string(to_string(row.encoding)) + ',' + format_real(row.epsilon) + ',' +
               format_real(row.mean_R) + ',' + std::to_string(row.n_instances) + '\n';
    }
    return out;
}

}  // namespace intenc

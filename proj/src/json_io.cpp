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

#include "intenc/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "intenc/exceptions.hpp"

namespace intenc {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

double as_real(const json& v, const char* what) {
    if (!v.is_number()) throw ParseError(std::string(what) + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError(std::string(what) + ": non-finite value");
    return d;
}

std::int64_t as_int(const json& v, const char* what) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15) {
            return static_cast<std::int64_t>(d);
        }
    }
    throw ParseError(std::string(what) + ": expected an integer");
}

std::size_t as_index(const json& v, const char* what) {
    const std::int64_t i = as_int(v, what);
    if (i < 0) throw ParseError(std::string(what) + ": negative index");
    return static_cast<std::size_t>(i);
}

const json& as_array(const json& v, const char* what) {
    if (!v.is_array()) throw ParseError(std::string(what) + ": expected an array");
    return v;
}

std::vector<double> real_vector(const json& v, const char* what) {
    std::vector<double> out;
    for (const auto& e : as_array(v, what)) out.push_back(as_real(e, what));
    return out;
}

SquareMatrix real_matrix(const json& v, const char* what) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : as_array(v, what)) rows.push_back(real_vector(r, what));
    try {
        return SquareMatrix::from_rows(rows);
    } catch (const ShapeError& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

json matrix_json(const SquareMatrix& m) {
    json rows = json::array();
    for (const auto& r : m.to_rows()) rows.push_back(r);
    return rows;
}

void check_count(const json& j, const char* key, std::size_t actual) {
    const std::int64_t declared = as_int(field(j, key), key);
    if (declared < 0 || static_cast<std::size_t>(declared) != actual) {
        throw ParseError(std::string("\"") + key + "\" = " + std::to_string(declared) +
                         " does not match the data (" + std::to_string(actual) + ")");
    }
}

// Rewraps validation errors from model constructors as parse errors.
template <class Fn>
auto validated(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

LoadedProblem parse_problem(const json& j) {
    return validated([&] {
        SquareMatrix Q = real_matrix(field(j, "Q"), "Q");
        std::vector<double> q = real_vector(field(j, "q"), "q");
        IntegerVector kappa;
        for (const auto& e : as_array(field(j, "kappa"), "kappa")) {
            kappa.push_back(as_int(e, "kappa"));
        }
        check_count(j, "n", q.size());
        const bool flagged = asymmetry(Q) > kAsymmetryTolerance;
        return LoadedProblem{UiqpProblem(std::move(Q), std::move(q), std::move(kappa)), flagged};
    });
}

json problem_to_json(const UiqpProblem& p) {
    json j;
    j["n"] = p.num_variables();
    j["Q"] = matrix_json(p.Q());
    j["q"] = p.q();
    j["kappa"] = p.kappa();
    return j;
}

IsingModel parse_ising(const json& j) {
    return validated([&] {
        std::vector<double> h = real_vector(field(j, "h"), "h");
        check_count(j, "num_spins", h.size());
        IsingModel::CouplerMap J;
        for (const auto& e : as_array(field(j, "J"), "J")) {
            if (!e.is_array() || e.size() != 3) throw ParseError("J: entries must be [i, j, value]");
            std::size_t a = as_index(e[0], "J");
            std::size_t b = as_index(e[1], "J");
            if (a == b) throw ParseError("J: diagonal coupler (" + std::to_string(a) + ", " +
                                         std::to_string(a) + ")");
            if (a > b) std::swap(a, b);
            if (!J.emplace(std::make_pair(a, b), as_real(e[2], "J")).second) {
                throw ParseError("J: duplicate coupler (" + std::to_string(a) + ", " +
                                 std::to_string(b) + ")");
            }
        }
        const double offset = as_real(field(j, "offset"), "offset");
        return IsingModel(std::move(h), std::move(J), offset);
    });
}

json ising_to_json(const IsingModel& m) {
    json j;
    j["num_spins"] = m.num_spins();
    j["h"] = m.h();
    json J = json::array();
    for (const auto& [key, v] : m.J()) J.push_back(json::array({key.first, key.second, v}));
    j["J"] = std::move(J);
    j["offset"] = m.offset();
    return j;
}

QuboModel parse_qubo(const json& j) {
    return validated([&] {
        SquareMatrix QB = real_matrix(field(j, "QB"), "QB");
        check_count(j, "num_bits", QB.size());
        return QuboModel(std::move(QB), as_real(field(j, "offset"), "offset"));
    });
}

json qubo_to_json(const QuboModel& m) {
    json j;
    j["num_bits"] = m.num_bits();
    j["QB"] = matrix_json(m.QB());
    j["offset"] = m.offset();
    return j;
}

IntEncoding parse_encoding(const json& j) {
    return validated([&] {
        std::vector<Coefficients> coeffs;
        for (const auto& row : as_array(field(j, "coefficients"), "coefficients")) {
            Coefficients c;
            for (const auto& e : as_array(row, "coefficients")) c.push_back(as_int(e, "coefficients"));
            coeffs.push_back(std::move(c));
        }
        return IntEncoding(std::move(coeffs));
    });
}

json encoding_to_json(const IntEncoding& enc) {
    json j;
    j["coefficients"] = enc.coefficients();
    return j;
}

json mu_result_to_json(const MuResult& r) {
    json j;
    j["mu"] = r.mu;
    j["initial_mu"] = r.initial_mu;
    j["m_l"] = optional_number(r.m_l);
    j["m_c"] = optional_number(r.m_c);
    json trace = json::array();
    for (const auto& s : r.trace) {
        json e;
        e["kind"] = "pair";
        e["pair"] = json::array({s.i, s.j});
        e["violation"] = s.violation;
        e["xi"] = json::array({optional_number(s.xi_i), optional_number(s.xi_j)});
        e["decremented"] = s.decremented;
        trace.push_back(std::move(e));
    }
    for (const auto& s : r.linear_trace) {
        json e;
        e["kind"] = "linear";
        switch (s.branch) {
            case LinearBranch::raise_min:
                e["branch"] = "raise_min";
                break;
            case LinearBranch::lower_max_to_vertex:
                e["branch"] = "lower_max_to_vertex";
                break;
            case LinearBranch::lower_max:
                e["branch"] = "lower_max";
                break;
        }
        e["index"] = s.index;
        e["mu"] = json::array({s.mu_before, s.mu_after});
        e["min_value"] = s.min_value;
        e["max_value"] = s.max_value;
        trace.push_back(std::move(e));
    }
    j["trace"] = std::move(trace);
    j["warnings"] = r.warnings;
    return j;
}

IntegerVector parse_mu(const json& j) {
    IntegerVector mu;
    for (const auto& e : as_array(field(j, "mu"), "mu")) {
        const std::int64_t v = as_int(e, "mu");
        if (v < 1) throw ParseError("mu entries must be >= 1");
        mu.push_back(v);
    }
    return mu;
}

json ground_states_to_json(const GroundStateResult& r) {
    json j;
    j["energy"] = r.energy;
    json states = json::array();
    for (const auto& s : r.states) {
        json row = json::array();
        for (std::int8_t v : s) row.push_back(static_cast<int>(v));
        states.push_back(std::move(row));
    }
    j["states"] = std::move(states);
    j["degeneracy"] = r.degeneracy;
    j["tolerance"] = r.tolerance;
    return j;
}

json constraints_to_json(const std::vector<UniquenessConstraint>& constraints) {
    json out = json::array();
    for (const auto& c : constraints) {
        json e;
        json lhs = json::array();
        for (const auto& [coef, var] : c.lhs) lhs.push_back(json::array({coef, var}));
        json rhs = json::array();
        for (const auto& t : c.rhs) {
            rhs.push_back(t.vars.size() == 1 ? json::array({t.coef, t.vars[0]})
                                             : json::array({t.coef, t.vars}));
        }
        e["lhs"] = std::move(lhs);
        e["relation"] = ">=";
        e["rhs"] = std::move(rhs);
        out.push_back(std::move(e));
    }
    return out;
}

std::string canonical_dump(const json& j) { return j.dump() + "\n"; }

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + path.string());
    out << text;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    write_text_file(path, canonical_dump(j));
}

LoadedProblem load_problem(const std::filesystem::path& path) {
    return parse_problem(read_json_file(path));
}
void store_problem(const UiqpProblem& p, const std::filesystem::path& path) {
    write_json_file(path, problem_to_json(p));
}
IsingModel load_ising(const std::filesystem::path& path) {
    return parse_ising(read_json_file(path));
}
void store_ising(const IsingModel& m, const std::filesystem::path& path) {
    write_json_file(path, ising_to_json(m));
}
QuboModel load_qubo(const std::filesystem::path& path) { return parse_qubo(read_json_file(path)); }
void store_qubo(const QuboModel& m, const std::filesystem::path& path) {
    write_json_file(path, qubo_to_json(m));
}
IntEncoding load_encoding(const std::filesystem::path& path) {
    return parse_encoding(read_json_file(path));
}
void store_encoding(const IntEncoding& enc, const std::filesystem::path& path) {
    write_json_file(path, encoding_to_json(enc));
}

}  // namespace intenc

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

// JSON persistence. Output is canonical: keys sorted, couplers sorted by
// (i, j), numbers in shortest round-trip form, one trailing newline.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "intenc/bound_finder.hpp"
#include "intenc/encodings.hpp"
#include "intenc/exact_solver.hpp"
#include "intenc/model.hpp"

namespace intenc {

using json = nlohmann::json;

/// Asymmetry above which a loaded Q is flagged before being symmetrized.
inline constexpr double kAsymmetryTolerance = 1e-12;

struct LoadedProblem {
    UiqpProblem problem;
    bool symmetrized = false;  // Q was asymmetric beyond kAsymmetryTolerance
};

// All parse_* functions throw ParseError on malformed or invalid input.
LoadedProblem parse_problem(const json& j);
json problem_to_json(const UiqpProblem& p);

IsingModel parse_ising(const json& j);
json ising_to_json(const IsingModel& m);

QuboModel parse_qubo(const json& j);
json qubo_to_json(const QuboModel& m);

IntEncoding parse_encoding(const json& j);
json encoding_to_json(const IntEncoding& enc);

json mu_result_to_json(const MuResult& r);
/// Reads the "mu" array of a bounds file.
IntegerVector parse_mu(const json& j);

json ground_states_to_json(const GroundStateResult& r);
json constraints_to_json(const std::vector<UniquenessConstraint>& constraints);

/// Canonical text form of a JSON value.
std::string canonical_dump(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const json& j);

LoadedProblem load_problem(const std::filesystem::path& path);
void store_problem(const UiqpProblem& p, const std::filesystem::path& path);
IsingModel load_ising(const std::filesystem::path& path);
void store_ising(const IsingModel& m, const std::filesystem::path& path);
QuboModel load_qubo(const std::filesystem::path& path);
void store_qubo(const QuboModel& m, const std::filesystem::path& path);
IntEncoding load_encoding(const std::filesystem::path& path);
void store_encoding(const IntEncoding& enc, const std::filesystem::path& path);

}  // namespace intenc

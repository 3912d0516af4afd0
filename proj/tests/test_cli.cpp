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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "intenc/cli.hpp"
#include "intenc/json_io.hpp"

namespace intenc {

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const char* env = std::getenv("INTENC_TMP");
    const fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "intenc_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
    const fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("encode") {
    const Run a = run({"encode", "--kappa", "12", "--mu", "8"});
    REQUIRE(a.code == kExitOk);
    CHECK(json::parse(a.out)["coefficients"] == json::parse("[1,2,4,5]"));

    CHECK(json::parse(run({"encode", "--kappa", "1", "--mu", "1"}).out)["coefficients"] ==
          json::parse("[1]"));
    const Run c = run({"encode", "--kappa", "20", "--mu", "6", "--constraints"});
    CHECK(json::parse(c.out)["coefficients"] == json::parse("[1,2,4,6,6,1]"));
    CHECK(json::parse(c.out)["constraints"].size() == 4);

    CHECK(json::parse(run({"encode", "--kappa", "5", "--scheme", "unary"}).out)["coefficients"] ==
          json::parse("[1,1,1,1,1]"));
    CHECK(json::parse(run({"encode", "--kappa", "5", "--scheme", "binary"}).out)["width"] == 3);

    CHECK(run({"encode", "--kappa", "0", "--mu", "1"}).code == kExitDomain);
    CHECK(run({"encode", "--kappa", "5"}).code == kExitDomain);
    CHECK(run({"encode", "--mu", "5"}).code == kExitDomain);
    CHECK(run({"encode", "--kappa", "5", "--mu", "2", "--scheme", "other"}).code == kExitDomain);
}

TEST_CASE("bounds") {
    const std::string p = write("p.json", R"({"n":2,"Q":[[2,1],[1,2]],"q":[-4,-4],"kappa":[10,10]})");
    const Run a = run({"bounds", "--input", p, "--epsilon-l", "0.1", "--epsilon-c", "0.1"});
    REQUIRE(a.code == kExitOk);
    CHECK(json::parse(a.out)["mu"] == json::parse("[2,2]"));

    const std::string lin = write("lin.json", R"({"n":2,"Q":[[0,0],[0,0]],"q":[2,-4],"kappa":[500,500]})");
    CHECK(json::parse(run({"bounds", "--input", lin}).out)["mu"] == json::parse("[100,50]"));

    const std::string bad = write("bad.json", R"({"n":2,"Q":[[1,1000],[1000,1]],"q":[0,0],"kappa":[5,5]})");
    const Run b = run({"bounds", "--input", bad});
    CHECK(b.code == kExitInfeasible);
    CHECK_THAT(b.err, ContainsSubstring("(0, 1)"));

    CHECK(run({"bounds", "--input", p, "--target", "qubo"}).code == kExitOk);
    CHECK(run({"bounds", "--input", p, "--epsilon-l", "2"}).code == kExitDomain);
    CHECK(run({"bounds", "--input", write("junk.json", "{not json")}).code == kExitDomain);
    CHECK(run({"bounds", "--input", scratch("missing.json").string()}).code == kExitDomain);
}

TEST_CASE("convert and solve") {
    const std::string p = write("one.json", R"({"n":1,"Q":[[1]],"q":[-2],"kappa":[2]})");
    const std::string ising = scratch("one_ising.json").string();
    REQUIRE(run({"convert", "--input", p, "--encoding", "unary", "--output", ising}).code == kExitOk);
    const IsingModel m = load_ising(ising);
    CHECK(m.num_spins() == 2);

    const Run s = run({"solve", "--input", ising});
    REQUIRE(s.code == kExitOk);
    const json g = json::parse(s.out);
    CHECK(g["energy"] == -1.0);
    CHECK(g["degeneracy"] == 2);

    const std::string direct =
            write("two_spin.json", R"({"num_spins":2,"h":[0,0],"J":[[0,1,0.5]],"offset":-0.5})");
    CHECK(json::parse(run({"solve", "--input", direct}).out)["degeneracy"] == 2);

    const Run q = run({"convert", "--input", p, "--target", "qubo", "--encoding", "binary"});
    REQUIRE(q.code == kExitOk);
    CHECK(json::parse(q.out)["num_bits"] == 2);

    const std::string enc_out = scratch("enc.json").string();
    REQUIRE(run({"convert", "--input", p, "--mu-from", "uniform:1", "--encoding-out", enc_out}).code ==
            kExitOk);
    CHECK(load_encoding(enc_out).coefficients(0) == Coefficients{1, 1});
    CHECK(run({"convert", "--input", p, "--mu-from", "uniform:x"}).code == kExitDomain);

    std::string big = R"({"num_spins":31,"h":[)";
    for (int k = 0; k < 31; ++k) big += k ? ",1" : "1";
    big += R"(],"J":[],"offset":0})";
    CHECK(run({"solve", "--input", write("big.json", big)}).code == kExitCapacity);
}

TEST_CASE("gen") {
    const fs::path a = scratch("gen_a.json");
    const fs::path b = scratch("gen_b.json");
    REQUIRE(run({"gen", "--family", "convex", "--seed", "7", "--output", a.string()}).code == kExitOk);
    REQUIRE(run({"gen", "--family", "convex", "--seed", "7", "--output", b.string()}).code == kExitOk);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
    CHECK(run({"gen", "--family", "convex"}).code == kExitDomain);
    const Run u = run({"gen", "--family", "uniform", "--alpha-Q", "10", "--alpha-q", "0", "--seed", "1"});
    REQUIRE(u.code == kExitOk);
    for (const auto& v : json::parse(u.out)["q"]) CHECK(v == 0.0);
}

TEST_CASE("resilience") {
    const std::string model =
            write("res_model.json", R"({"num_spins":2,"h":[1,0],"J":[[0,1,-2]],"offset":0})");
    const Run a = run({"resilience", "--seed", "1", "--input", model, "--epsilon", "0", "--trials", "5"});
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == "epsilon,n_same,n_trials,R\n0,5,5,1\n");

    const std::string cfg = write("cfg.json", R"({
        "instances": [{"family": "convex", "n": 2, "kappa": 4, "seed": 3},
                      {"family": "uniform", "n": 2, "kappa": 4, "alpha_Q": 5, "alpha_q": 10, "seed": 4}],
        "epsilons": [0], "n_trials": 3})");
    const fs::path dir = scratch("res_out");
    const Run b = run({"resilience", "--seed", "9", "--config", cfg, "--out-dir", dir.string(),
                       "--workers", "2"});
    REQUIRE(b.code == kExitOk);
    const std::string summary = slurp(dir / "summary.csv");
    CHECK(summary.rfind("encoding,epsilon,mean_R,n_instances\n", 0) == 0);
    std::istringstream lines(slurp(dir / "cells.csv"));
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK_THAT(line, ContainsSubstring(",1,ok"));
        ++rows;
    }
    CHECK(rows == 4);
    CHECK(slurp(dir / "trials.csv").rfind("instance,encoding,epsilon,trial,same\n", 0) == 0);

    CHECK(run({"resilience", "--input", model}).code == kExitDomain);
}

TEST_CASE("help and usage errors") {
    const Run h = run({"--help"});
    CHECK(h.code == kExitOk);
    CHECK_THAT(h.out, ContainsSubstring("resilience"));
    CHECK(run({}).code == kExitDomain);
    CHECK(run({"frobnicate"}).code == kExitDomain);
}

}  // namespace intenc

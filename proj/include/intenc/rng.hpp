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

// Portable random streams. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; every distribution on top of it is
// implemented here because the std:: distributions are not.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>

namespace intenc {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Folds a sequence of components into one seed:
/// h = splitmix64(base), then h = splitmix64(h ^ c) for each component.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> components);

class Rng {
 public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform on the open interval (0, 1).
    double uniform_open01();

    /// Uniform integer on [lo, hi] by rejection sampling.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// True with probability p.
    bool bernoulli(double p) { return uniform01() < p; }

    /// Standard normal by the Box-Muller transform. Values are produced in
    /// pairs; the second of each pair is returned by the next call.
    double normal();

 private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

}  // namespace intenc

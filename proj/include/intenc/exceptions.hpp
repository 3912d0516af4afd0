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

#include <stdexcept>
#include <string>

namespace intenc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An argument lies outside the domain of the operation (e.g. mu > kappa).
class DomainError : public Error {
 public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Dimensions of vectors/matrices do not agree.
class ShapeError : public Error {
 public:
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

/// Malformed or invalid input file.
class ParseError : public Error {
 public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// A required structural ingredient is missing, e.g. a problem with no
/// quadratic terms when a coupler minimum is requested.
class StructuralError : public Error {
 public:
    explicit StructuralError(const std::string& msg) : Error(msg) {}
};

/// The coefficient sums of an encoding do not match the variable bounds.
class EncodingMismatchError : public Error {
 public:
    explicit EncodingMismatchError(const std::string& msg) : Error(msg) {}
};

/// The operation needs construction data the encoding does not carry.
class UnsupportedEncodingError : public Error {
 public:
    explicit UnsupportedEncodingError(const std::string& msg) : Error(msg) {}
};

/// The requested precision cannot be met by any admissible coefficient bound.
class InfeasiblePrecisionError : public Error {
 public:
    explicit InfeasiblePrecisionError(const std::string& msg) : Error(msg) {}
};

/// The problem is too large for an exhaustive method.
class CapacityError : public Error {
 public:
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

}  // namespace intenc

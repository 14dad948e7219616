// Copyright 2026 The coseed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense double-precision kernels used by the simplex tableau and the power
// iteration. Every kernel has a scalar reference version and, on x86-64, an
// AVX2 version; the dispatcher picks one at runtime.
//
// Equivalence contract (checked by tests/test_simd.cpp):
//   axpy, scale, max_abs_diff, argmax   bit-identical across levels
//   dot, sum                            equal up to summation order

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace coseed::simd {

enum class Level { kScalar, kAvx2 };

std::string_view level_name(Level level);

// True when the AVX2 kernels were compiled in and the CPU supports them.
bool avx2_available();

// Highest level usable on this host.
Level best_level();

// Level used by the dispatching entry points below. Initialized from the
// COSEED_SIMD environment variable ("scalar" or "avx2") when set, otherwise
// best_level().
Level active_level();

// Throws DomainError if the level is not available on this host.
void set_active_level(Level level);

// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
// x *= a
void scale(double a, std::span<double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
// Index of the first maximal element; x.size() when x is empty.
std::size_t argmax(std::span<const double> x);

namespace scalar {
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
std::size_t argmax(std::span<const double> x);
}  // namespace scalar

namespace avx2 {
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
std::size_t argmax(std::span<const double> x);
}  // namespace avx2

}  // namespace coseed::simd

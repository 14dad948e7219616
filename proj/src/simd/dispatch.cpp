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

#include <atomic>
#include <cstdlib>
#include <string>

#include "coseed/simd.hpp"
#include "coseed/types.hpp"

namespace coseed::simd {

#ifndef COSEED_HAVE_AVX2_TU
// Non-x86 builds: the AVX2 names resolve to the scalar kernels and are never
// selected, because avx2_available() is false.
namespace avx2 {
void axpy(double a, std::span<const double> x, std::span<double> y) { scalar::axpy(a, x, y); }
void scale(double a, std::span<double> x) { scalar::scale(a, x); }
double dot(std::span<const double> x, std::span<const double> y) { return scalar::dot(x, y); }
double sum(std::span<const double> x) { return scalar::sum(x); }
double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  return scalar::max_abs_diff(x, y);
}
std::size_t argmax(std::span<const double> x) { return scalar::argmax(x); }
}  // namespace avx2
#endif

namespace {

Level initial_level() {
  const char* env = std::getenv("COSEED_SIMD");
  if (env != nullptr) {
    std::string v(env);
    if (v == "scalar") return Level::kScalar;
    if (v == "avx2" && avx2_available()) return Level::kAvx2;
  }
  return best_level();
}

std::atomic<Level>& level_slot() {
  static std::atomic<Level> slot{initial_level()};
  return slot;
}

bool use_avx2() { return level_slot().load(std::memory_order_relaxed) == Level::kAvx2; }

}  // namespace

std::string_view level_name(Level level) {
  switch (level) {
    case Level::kScalar:
      return "scalar";
    case Level::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
#if defined(COSEED_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool available = __builtin_cpu_supports("avx2");
  return available;
#else
  return false;
#endif
}

Level best_level() { return avx2_available() ? Level::kAvx2 : Level::kScalar; }

Level active_level() { return level_slot().load(std::memory_order_relaxed); }

void set_active_level(Level level) {
  if (level == Level::kAvx2 && !avx2_available()) {
    throw DomainError("AVX2 kernels are not available on this host");
  }
  level_slot().store(level, std::memory_order_relaxed);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  use_avx2() ? avx2::axpy(a, x, y) : scalar::axpy(a, x, y);
}

void scale(double a, std::span<double> x) { use_avx2() ? avx2::scale(a, x) : scalar::scale(a, x); }

double dot(std::span<const double> x, std::span<const double> y) {
  return use_avx2() ? avx2::dot(x, y) : scalar::dot(x, y);
}

double sum(std::span<const double> x) { return use_avx2() ? avx2::sum(x) : scalar::sum(x); }

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  return use_avx2() ? avx2::max_abs_diff(x, y) : scalar::max_abs_diff(x, y);
}

std::size_t argmax(std::span<const double> x) {
  return use_avx2() ? avx2::argmax(x) : scalar::argmax(x);
}

}  // namespace coseed::simd

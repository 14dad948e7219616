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

// Compiled with -mavx2. Only reachable through the dispatcher after a CPUID
// check. No FMA: axpy must stay bit-identical to the scalar reference.

#include <immintrin.h>

#include <cmath>

#include "coseed/simd.hpp"

namespace coseed::simd::avx2 {

void axpy(double a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const double* xp = x.data();
  double* yp = y.data();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d x0 = _mm256_loadu_pd(xp + i);
    __m256d x1 = _mm256_loadu_pd(xp + i + 4);
    __m256d y0 = _mm256_loadu_pd(yp + i);
    __m256d y1 = _mm256_loadu_pd(yp + i + 4);
    y0 = _mm256_add_pd(y0, _mm256_mul_pd(va, x0));
    y1 = _mm256_add_pd(y1, _mm256_mul_pd(va, x1));
    _mm256_storeu_pd(yp + i, y0);
    _mm256_storeu_pd(yp + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d x0 = _mm256_loadu_pd(xp + i);
    __m256d y0 = _mm256_loadu_pd(yp + i);
    _mm256_storeu_pd(yp + i, _mm256_add_pd(y0, _mm256_mul_pd(va, x0)));
  }
  for (; i < n; ++i) {
    double t = a * xp[i];
    yp[i] = yp[i] + t;
  }
}

void scale(double a, std::span<double> x) {
  const std::size_t n = x.size();
  double* xp = x.data();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(xp + i, _mm256_mul_pd(_mm256_loadu_pd(xp + i), va));
  }
  for (; i < n; ++i) xp[i] *= a;
}

namespace {

double horizontal_add(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double horizontal_max(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, shuf));
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i)));
    acc1 = _mm256_add_pd(
        acc1, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i + 4), _mm256_loadu_pd(y.data() + i + 4)));
  }
  double acc = horizontal_add(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  __m256d acc0 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x.data() + i));
  }
  double acc = horizontal_add(acc0);
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i));
    best = _mm256_max_pd(best, _mm256_andnot_pd(sign, d));
  }
  double out = horizontal_max(best);
  for (; i < n; ++i) {
    double d = std::fabs(x[i] - y[i]);
    if (d > out) out = d;
  }
  return out;
}

std::size_t argmax(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return 0;
  if (n < 8) return scalar::argmax(x);
  __m256d best = _mm256_loadu_pd(x.data());
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    best = _mm256_max_pd(best, _mm256_loadu_pd(x.data() + i));
  }
  double m = horizontal_max(best);
  for (; i < n; ++i) {
    if (x[i] > m) m = x[i];
  }
  // First occurrence of the maximum, matching the scalar tie rule.
  const __m256d vm = _mm256_set1_pd(m);
  i = 0;
  for (; i + 4 <= n; i += 4) {
    int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(x.data() + i), vm, _CMP_EQ_OQ));
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(mask));
  }
  for (; i < n; ++i) {
    if (x[i] == m) return i;
  }
  return 0;
}

}  // namespace coseed::simd::avx2

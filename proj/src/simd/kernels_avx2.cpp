#include "casimir/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define CASIMIR_X86 1
#include <immintrin.h>
#else
#define CASIMIR_X86 0
#endif

// The functions below carry a target attribute instead of the whole file being
// compiled with -mavx2, so no AVX2 code can leak into inline functions shared
// with the rest of the library.
namespace casimir::simd::detail {

#if CASIMIR_X86 && (defined(__GNUC__) || defined(__clang__))

bool avx2_compiled() { return true; }

namespace {

__attribute__((target("avx2,fma"))) inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

__attribute__((target("avx2,fma"))) double dot_avx2(const double* x, const double* y,
                                                    std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= len; j += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + j + 4), _mm256_loadu_pd(y + j + 4), acc1);
  }
  for (; j + 4 <= len; j += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < len; ++j) acc += x[j] * y[j];
  return acc;
}

// 2 x 4 register tile: two rows of a against four rows of b share every load.
__attribute__((target("avx2,fma"))) void gram_accumulate_avx2(const double* a,
                                                              std::size_t rows_a,
                                                              const double* b,
                                                              std::size_t rows_b,
                                                              std::size_t len, double* out) {
  const std::size_t len4 = len & ~std::size_t{3};
  std::size_t i = 0;
  for (; i + 2 <= rows_a; i += 2) {
    const double* a0 = a + i * len;
    const double* a1 = a0 + len;
    std::size_t k = 0;
    for (; k + 4 <= rows_b; k += 4) {
      const double* b0 = b + k * len;
      const double* b1 = b0 + len;
      const double* b2 = b1 + len;
      const double* b3 = b2 + len;
      __m256d c00 = _mm256_setzero_pd(), c01 = _mm256_setzero_pd();
      __m256d c02 = _mm256_setzero_pd(), c03 = _mm256_setzero_pd();
      __m256d c10 = _mm256_setzero_pd(), c11 = _mm256_setzero_pd();
      __m256d c12 = _mm256_setzero_pd(), c13 = _mm256_setzero_pd();
      for (std::size_t j = 0; j < len4; j += 4) {
        const __m256d x0 = _mm256_loadu_pd(a0 + j);
        const __m256d x1 = _mm256_loadu_pd(a1 + j);
        __m256d y = _mm256_loadu_pd(b0 + j);
        c00 = _mm256_fmadd_pd(x0, y, c00);
        c10 = _mm256_fmadd_pd(x1, y, c10);
        y = _mm256_loadu_pd(b1 + j);
        c01 = _mm256_fmadd_pd(x0, y, c01);
        c11 = _mm256_fmadd_pd(x1, y, c11);
        y = _mm256_loadu_pd(b2 + j);
        c02 = _mm256_fmadd_pd(x0, y, c02);
        c12 = _mm256_fmadd_pd(x1, y, c12);
        y = _mm256_loadu_pd(b3 + j);
        c03 = _mm256_fmadd_pd(x0, y, c03);
        c13 = _mm256_fmadd_pd(x1, y, c13);
      }
      double r00 = hsum(c00), r01 = hsum(c01), r02 = hsum(c02), r03 = hsum(c03);
      double r10 = hsum(c10), r11 = hsum(c11), r12 = hsum(c12), r13 = hsum(c13);
      for (std::size_t j = len4; j < len; ++j) {
        r00 += a0[j] * b0[j];
        r01 += a0[j] * b1[j];
        r02 += a0[j] * b2[j];
        r03 += a0[j] * b3[j];
        r10 += a1[j] * b0[j];
        r11 += a1[j] * b1[j];
        r12 += a1[j] * b2[j];
        r13 += a1[j] * b3[j];
      }
      double* o0 = out + i * rows_b + k;
      double* o1 = o0 + rows_b;
      o0[0] += r00;
      o0[1] += r01;
      o0[2] += r02;
      o0[3] += r03;
      o1[0] += r10;
      o1[1] += r11;
      o1[2] += r12;
      o1[3] += r13;
    }
    for (; k < rows_b; ++k) {
      const double* bk = b + k * len;
      out[i * rows_b + k] += dot_avx2(a0, bk, len);
      out[(i + 1) * rows_b + k] += dot_avx2(a1, bk, len);
    }
  }
  for (; i < rows_a; ++i) {
    const double* ai = a + i * len;
    for (std::size_t k = 0; k < rows_b; ++k) out[i * rows_b + k] += dot_avx2(ai, b + k * len, len);
  }
}

#else

bool avx2_compiled() { return false; }

double dot_avx2(const double* x, const double* y, std::size_t len) {
  return dot_scalar(x, y, len);
}

void gram_accumulate_avx2(const double* a, std::size_t rows_a, const double* b,
                          std::size_t rows_b, std::size_t len, double* out) {
  gram_accumulate_scalar(a, rows_a, b, rows_b, len, out);
}

#endif

}  // namespace casimir::simd::detail

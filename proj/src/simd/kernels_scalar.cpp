#include "casimir/simd/kernels.hpp"

namespace casimir::simd::detail {

void gram_accumulate_scalar(const double* a, std::size_t rows_a, const double* b,
                            std::size_t rows_b, std::size_t len, double* out) {
  for (std::size_t i = 0; i < rows_a; ++i) {
    const double* ai = a + i * len;
    for (std::size_t k = 0; k < rows_b; ++k) {
      const double* bk = b + k * len;
      double acc = 0.0;
      for (std::size_t j = 0; j < len; ++j) acc += ai[j] * bk[j];
      out[i * rows_b + k] += acc;
    }
  }
}

double dot_scalar(const double* x, const double* y, std::size_t len) {
  double acc = 0.0;
  for (std::size_t j = 0; j < len; ++j) acc += x[j] * y[j];
  return acc;
}

}  // namespace casimir::simd::detail

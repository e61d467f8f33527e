#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Inner loops of the multipole oracle. Each kernel exists as a scalar reference
// and as an AVX2/FMA variant; the variant is picked once at runtime from the
// CPU features (override with CASIMIR_SIMD=scalar|avx2). The variants sum in a
// different order, so they agree to rounding, not bit for bit.
namespace casimir::simd {

enum class Isa { scalar, avx2 };

/// ISA used by the dispatching entry points below.
Isa active_isa();
bool isa_supported(Isa isa);
std::string_view isa_name(Isa isa);

/// out[i * rows_b + k] += sum_j a[i * len + j] * b[k * len + j]
/// for i < rows_a, k < rows_b (row-major, rows of length len).
void gram_accumulate(std::span<const double> a, std::size_t rows_a, std::span<const double> b,
                     std::size_t rows_b, std::size_t len, std::span<double> out);

/// sum_j x[j] * y[j].
double dot(std::span<const double> x, std::span<const double> y);

/// Explicit variants, used by the equivalence tests and the benchmarks.
void gram_accumulate(Isa isa, std::span<const double> a, std::size_t rows_a,
                     std::span<const double> b, std::size_t rows_b, std::size_t len,
                     std::span<double> out);
double dot(Isa isa, std::span<const double> x, std::span<const double> y);

namespace detail {
void gram_accumulate_scalar(const double* a, std::size_t rows_a, const double* b,
                            std::size_t rows_b, std::size_t len, double* out);
double dot_scalar(const double* x, const double* y, std::size_t len);
void gram_accumulate_avx2(const double* a, std::size_t rows_a, const double* b,
                          std::size_t rows_b, std::size_t len, double* out);
double dot_avx2(const double* x, const double* y, std::size_t len);
bool avx2_compiled();
}  // namespace detail

}  // namespace casimir::simd

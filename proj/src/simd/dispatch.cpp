#include <cstdlib>
#include <stdexcept>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/simd/kernels.hpp"

namespace casimir::simd {

namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa select_isa() {
  if (const char* env = std::getenv("CASIMIR_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

void check_gram(std::span<const double> a, std::size_t rows_a, std::span<const double> b,
                std::size_t rows_b, std::size_t len, std::span<double> out) {
  if (a.size() < rows_a * len || b.size() < rows_b * len || out.size() < rows_a * rows_b)
    throw DomainError("gram_accumulate: span too small for the requested shape");
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return detail::avx2_compiled() && cpu_has_avx2();
  }
  return false;
}

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

void gram_accumulate(Isa isa, std::span<const double> a, std::size_t rows_a,
                     std::span<const double> b, std::size_t rows_b, std::size_t len,
                     std::span<double> out) {
  check_gram(a, rows_a, b, rows_b, len, out);
  if (isa == Isa::avx2 && isa_supported(Isa::avx2))
    detail::gram_accumulate_avx2(a.data(), rows_a, b.data(), rows_b, len, out.data());
  else
    detail::gram_accumulate_scalar(a.data(), rows_a, b.data(), rows_b, len, out.data());
}

void gram_accumulate(std::span<const double> a, std::size_t rows_a, std::span<const double> b,
                     std::size_t rows_b, std::size_t len, std::span<double> out) {
  gram_accumulate(active_isa(), a, rows_a, b, rows_b, len, out);
}

double dot(Isa isa, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("dot: length mismatch");
  if (isa == Isa::avx2 && isa_supported(Isa::avx2))
    return detail::dot_avx2(x.data(), y.data(), x.size());
  return detail::dot_scalar(x.data(), y.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  return dot(active_isa(), x, y);
}

}  // namespace casimir::simd

#pragma once

// Data-parallel arithmetic used by the quadrature, eigensolver and minimizer
// inner loops. Each kernel has a scalar reference implementation and, on x86,
// an AVX2/FMA variant; the variant is picked once at first use from CPUID and
// can be forced with TFBOUND_SIMD=scalar|avx2.

#include <cstddef>
#include <span>
#include <string_view>

namespace tfbound::simd {

enum class Backend { Scalar, Avx2 };

/// Backend used by the dispatched kernels below.
Backend active_backend();

/// Force a backend (tests only). Requesting Avx2 on a CPU without it falls back to Scalar.
void set_backend(Backend b);

/// True when the AVX2 variant was compiled in and the CPU supports AVX2+FMA.
bool avx2_available();

std::string_view backend_name(Backend b);

double dot(std::span<const double> a, std::span<const double> b);
double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> c);
/// out = base + s * slope
void affine(std::span<const double> base, std::span<const double> slope, double s, std::span<double> out);
/// out = a + t (b - a)
void lerp(std::span<const double> a, std::span<const double> b, double t, std::span<double> out);
/// out = a * b (elementwise)
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

// Direct access to each variant, for equivalence tests.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
void affine(const double* base, const double* slope, double s, double* out, std::size_t n);
void lerp(const double* a, const double* b, double t, double* out, std::size_t n);
void multiply(const double* a, const double* b, double* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
void affine(const double* base, const double* slope, double s, double* out, std::size_t n);
void lerp(const double* a, const double* b, double t, double* out, std::size_t n);
void multiply(const double* a, const double* b, double* out, std::size_t n);
}  // namespace avx2

}  // namespace tfbound::simd

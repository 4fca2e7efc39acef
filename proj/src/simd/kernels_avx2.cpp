#include "tfbound/simd/kernels.hpp"

#include <immintrin.h>

namespace tfbound::simd::avx2 {

namespace {
inline double hsum(__m256d v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}
}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i];
    return hsum(acc) + tail;
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i] * c[i];
    return hsum(acc) + tail;
}

void affine(const double* base, const double* slope, double s, double* out, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vs, _mm256_loadu_pd(slope + i), _mm256_loadu_pd(base + i)));
    }
    for (; i < n; ++i) out[i] = base[i] + s * slope[i];
}

void lerp(const double* a, const double* b, double t, double* out, std::size_t n) {
    const __m256d vt = _mm256_set1_pd(t);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(b + i), va);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vt, d, va));
    }
    for (; i < n; ++i) out[i] = a[i] + t * (b[i] - a[i]);
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace tfbound::simd::avx2

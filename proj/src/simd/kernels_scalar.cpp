#include "tfbound/simd/kernels.hpp"

namespace tfbound::simd::scalar {

// Four interleaved partial sums; same association order as the AVX2 lanes
// so both variants agree closely on long vectors.
double dot(const double* a, const double* b, std::size_t n) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s[0] += a[i] * b[i];
        s[1] += a[i + 1] * b[i + 1];
        s[2] += a[i + 2] * b[i + 2];
        s[3] += a[i + 3] * b[i + 3];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i];
    return ((s[0] + s[1]) + (s[2] + s[3])) + tail;
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s[0] += a[i] * b[i] * c[i];
        s[1] += a[i + 1] * b[i + 1] * c[i + 1];
        s[2] += a[i + 2] * b[i + 2] * c[i + 2];
        s[3] += a[i + 3] * b[i + 3] * c[i + 3];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i] * c[i];
    return ((s[0] + s[1]) + (s[2] + s[3])) + tail;
}

void affine(const double* base, const double* slope, double s, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = base[i] + s * slope[i];
}

void lerp(const double* a, const double* b, double t, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + t * (b[i] - a[i]);
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace tfbound::simd::scalar

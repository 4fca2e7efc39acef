#include "tfbound/simd/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

namespace tfbound::simd {

namespace {

bool cpu_has_avx2() {
#if defined(TFBOUND_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect() {
    if (const char* env = std::getenv("TFBOUND_SIMD")) {
        if (std::string(env) == "scalar") return Backend::Scalar;
    }
    return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{detect()};
    return b;
}

}  // namespace

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_available()) b = Backend::Scalar;
    current().store(b, std::memory_order_relaxed);
}

bool avx2_available() {
    static const bool ok = cpu_has_avx2();
    return ok;
}

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

#if defined(TFBOUND_HAVE_AVX2)
#define TFB_DISPATCH(call_avx2, call_scalar) \
    return active_backend() == Backend::Avx2 ? call_avx2 : call_scalar
#else
#define TFB_DISPATCH(call_avx2, call_scalar) return call_scalar
#endif

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    TFB_DISPATCH(avx2::dot(a.data(), b.data(), a.size()), scalar::dot(a.data(), b.data(), a.size()));
}

double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
    assert(a.size() == b.size() && a.size() == c.size());
    TFB_DISPATCH(avx2::dot3(a.data(), b.data(), c.data(), a.size()),
                 scalar::dot3(a.data(), b.data(), c.data(), a.size()));
}

void affine(std::span<const double> base, std::span<const double> slope, double s, std::span<double> out) {
    assert(base.size() == slope.size() && base.size() == out.size());
    TFB_DISPATCH(avx2::affine(base.data(), slope.data(), s, out.data(), out.size()),
                 scalar::affine(base.data(), slope.data(), s, out.data(), out.size()));
}

void lerp(std::span<const double> a, std::span<const double> b, double t, std::span<double> out) {
    assert(a.size() == b.size() && a.size() == out.size());
    TFB_DISPATCH(avx2::lerp(a.data(), b.data(), t, out.data(), out.size()),
                 scalar::lerp(a.data(), b.data(), t, out.data(), out.size()));
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    assert(a.size() == b.size() && a.size() == out.size());
    TFB_DISPATCH(avx2::multiply(a.data(), b.data(), out.data(), out.size()),
                 scalar::multiply(a.data(), b.data(), out.data(), out.size()));
}

#undef TFB_DISPATCH

}  // namespace tfbound::simd

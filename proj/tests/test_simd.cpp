#include "doctest.h"

#include "tfbound/bounds.hpp"
#include "tfbound/simd/kernels.hpp"
#include "tfbound/tf_energy.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace tfbound;
namespace sk = tfbound::simd;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

struct BackendGuard {
    sk::Backend saved = sk::active_backend();
    ~BackendGuard() { sk::set_backend(saved); }
};

}  // namespace

TEST_CASE("avx2 kernels agree with the scalar reference") {
    if (!sk::avx2_available()) {
        MESSAGE("AVX2 not available; only the scalar path is exercised");
        return;
    }
#ifdef TFBOUND_HAVE_AVX2
    std::mt19937_64 rng(7);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 17u, 1000u, 4001u}) {
        CAPTURE(n);
        const auto a = random_vec(rng, n), b = random_vec(rng, n), c = random_vec(rng, n);
        double mag = 0.0, mag3 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mag += std::abs(a[i] * b[i]);
            mag3 += std::abs(a[i] * b[i] * c[i]);
        }
        CHECK(std::abs(sk::scalar::dot(a.data(), b.data(), n) - sk::avx2::dot(a.data(), b.data(), n)) <= 1e-14 * mag + 1e-300);
        CHECK(std::abs(sk::scalar::dot3(a.data(), b.data(), c.data(), n) - sk::avx2::dot3(a.data(), b.data(), c.data(), n)) <=
              1e-14 * mag3 + 1e-300);
        std::vector<double> o1(n), o2(n);
        auto same = [&](double tol) {
            for (std::size_t i = 0; i < n; ++i)
                if (std::abs(o1[i] - o2[i]) > tol * (1.0 + std::abs(o1[i]))) return false;
            return true;
        };
        sk::scalar::affine(a.data(), b.data(), 0.37, o1.data(), n);
        sk::avx2::affine(a.data(), b.data(), 0.37, o2.data(), n);
        CHECK(same(4e-16));
        sk::scalar::lerp(a.data(), b.data(), 0.61, o1.data(), n);
        sk::avx2::lerp(a.data(), b.data(), 0.61, o2.data(), n);
        CHECK(same(4e-16));
        sk::scalar::multiply(a.data(), b.data(), o1.data(), n);
        sk::avx2::multiply(a.data(), b.data(), o2.data(), n);
        CHECK(same(0.0));
    }
#endif
}

TEST_CASE("dispatch follows set_backend") {
    BackendGuard guard;
    sk::set_backend(sk::Backend::Scalar);
    CHECK(sk::active_backend() == sk::Backend::Scalar);
    sk::set_backend(sk::Backend::Avx2);
    CHECK(sk::active_backend() == (sk::avx2_available() ? sk::Backend::Avx2 : sk::Backend::Scalar));
    CHECK(sk::backend_name(sk::Backend::Scalar) == "scalar");
}

TEST_CASE("end to end results do not depend on the backend") {
    BackendGuard guard;
    const auto tf = solve_tf();
    auto run = [&](sk::Backend b) {
        sk::set_backend(b);
        const auto rho = tf_density_profile(tf, default_tf_grid());
        SpectrumOptions opt;
        opt.truncate_unresolved = true;
        const auto spec = full_spectrum(tf_potential(tf, 100), opt);
        return std::pair{energy_breakdown(rho).total, spec.eigensum};
    };
    const auto s = run(sk::Backend::Scalar);
    const auto v = run(sk::Backend::Avx2);
    CHECK(v.first == doctest::Approx(s.first).epsilon(1e-13));
    CHECK(v.second == doctest::Approx(s.second).epsilon(1e-10));
}
